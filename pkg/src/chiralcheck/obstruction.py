"""Chirality obstructions from the double branched cover.

Three per-prime tests, all for primes ``p = 3 mod 4``:

* ``theorem1``: the p-primary part of H_1 is nonzero and cyclic.  On a
  cyclic group ``Z/p^n`` a form is isometric to its negative only if -1 is
  a square mod p, which fails for these primes.
* ``goeritz``: p divides the determinant exactly once.
* ``goeritz_strong``: p divides the determinant to an odd power.

Any of them firing proves the knot is not isotopic to its mirror image.
No test here ever proves a knot amphichiral.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

from .errors import InconsistentKnotDataError, InvalidKnotDataError, OracleBoundExceeded
from .forms import (
    DEFAULT_ORACLE_BOUND,
    TorsionLinkingForm,
    brute_force_self_negation_isometric,
    cyclic_parameter,
    linking_form_from_seifert,
    restrict_to_primary,
)
from .groups import AbelianGroup, primary_part
from .linalg import IntMatrix, determinant
from .numtheory import Factorizer, factorize, is_prime, valuation

__all__ = [
    "Verdict",
    "PrimeEvidence",
    "ChiralityReport",
    "theorem1_check",
    "goeritz_check",
    "goeritz_strong_check",
    "determinant_from_alexander",
    "full_report",
    "report_from_form",
]


class Verdict(str, enum.Enum):
    OBSTRUCTED = "OBSTRUCTED"
    INCONCLUSIVE = "INCONCLUSIVE"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class PrimeEvidence:
    """What each test says about one prime dividing the determinant.

    ``oracle_self_isometric`` holds the brute-force answer to "is the
    restricted form isometric to its negative?" for nonzero cyclic primary
    parts, and ``None`` where the search was not run (non-cyclic part, or the
    part exceeded the enumeration bound).
    """

    prime: int
    mod4: int
    valuation: int
    primary_exponents: Tuple[int, ...]
    theorem1_fires: bool
    goeritz_fires: bool
    goeritz_strong_fires: bool
    oracle_self_isometric: Optional[bool] = None

    @property
    def fires(self) -> bool:
        return self.theorem1_fires or self.goeritz_fires or self.goeritz_strong_fires


@dataclass(frozen=True)
class ChiralityReport:
    knot_label: str
    determinant: int
    group: AbelianGroup
    per_prime: Tuple[PrimeEvidence, ...] = ()
    verdict: Verdict = Verdict.INCONCLUSIVE
    obstructing_primes: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.determinant != self.group.order:
            raise ValueError(f"determinant {self.determinant} != |H| = {self.group.order}")
        if (self.verdict is Verdict.OBSTRUCTED) != bool(self.obstructing_primes):
            raise ValueError("verdict must be OBSTRUCTED exactly when some prime obstructs")

    @property
    def obstructed(self) -> bool:
        return self.verdict is Verdict.OBSTRUCTED


def theorem1_check(G: AbelianGroup, p: int) -> bool:
    """True when ``p = 3 mod 4`` and the p-primary part of ``G`` is nonzero and cyclic."""
    if p % 4 != 3:
        return False
    part = primary_part(G, p)
    return not part.is_zero and part.is_cyclic


def _check_knot_determinant(d: int, p: int) -> None:
    if d < 1 or d % 2 == 0:
        raise InvalidKnotDataError(f"{d} is not a knot determinant (knot determinants are odd)")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def goeritz_check(d: int, p: int) -> bool:
    """True when ``p = 3 mod 4``, ``p | d`` and ``p**2`` does not divide ``d``."""
    _check_knot_determinant(d, p)
    return p % 4 == 3 and d % p == 0 and d % (p * p) != 0


def goeritz_strong_check(d: int, p: int) -> bool:
    """True when ``p = 3 mod 4`` and ``p`` divides ``d`` to an odd power."""
    _check_knot_determinant(d, p)
    return p % 4 == 3 and valuation(d, p) % 2 == 1


def determinant_from_alexander(coeffs: Sequence[int]) -> int:
    """``|Delta(-1)|`` for coefficients listed in ascending degree."""
    value = abs(sum(c if i % 2 == 0 else -c for i, c in enumerate(coeffs)))
    if value == 0:
        raise InvalidKnotDataError("Delta(-1) = 0: not an Alexander polynomial of a knot")
    return value


def _prime_evidence(form: TorsionLinkingForm, det: int, p: int, oracle_bound: int) -> PrimeEvidence:
    part = primary_part(form.group, p)
    t1 = theorem1_check(form.group, p)
    oracle = None
    if not part.is_zero and part.is_cyclic:
        cyc = cyclic_parameter(restrict_to_primary(form, p))
        try:
            oracle = brute_force_self_negation_isometric(cyc, bound=oracle_bound)
        except OracleBoundExceeded:
            oracle = None
        if t1 and oracle:
            raise AssertionError(
                f"oracle found an isometry lambda ~ -lambda on Z/{cyc.modulus} with p = 3 mod 4"
            )
    return PrimeEvidence(
        prime=p,
        mod4=p % 4,
        valuation=valuation(det, p),
        primary_exponents=part.exponents,
        theorem1_fires=t1,
        goeritz_fires=goeritz_check(det, p),
        goeritz_strong_fires=goeritz_strong_check(det, p),
        oracle_self_isometric=oracle,
    )


def report_from_form(
    label: str,
    form: TorsionLinkingForm,
    *,
    oracle_bound: int = DEFAULT_ORACLE_BOUND,
    factorizer: Factorizer = factorize,
) -> ChiralityReport:
    """Assemble the report from an already computed linking form."""
    det = form.group.order
    if det % 2 == 0:
        raise InvalidKnotDataError(f"determinant {det} is even: input is not a knot's Seifert matrix")
    evidence = tuple(_prime_evidence(form, det, p, oracle_bound) for p, _ in factorizer(det))
    obstructing = tuple(e.prime for e in evidence if e.fires)
    return ChiralityReport(
        knot_label=label,
        determinant=det,
        group=form.group,
        per_prime=evidence,
        verdict=Verdict.OBSTRUCTED if obstructing else Verdict.INCONCLUSIVE,
        obstructing_primes=obstructing,
    )


def full_report(
    label: str,
    seifert,
    alexander_coeffs: Optional[Sequence[int]] = None,
    *,
    oracle_bound: int = DEFAULT_ORACLE_BOUND,
    factorizer: Factorizer = factorize,
) -> ChiralityReport:
    """Run the whole pipeline on one Seifert matrix.

    Parameters
    ----------
    label : str
        Name carried into the report.
    seifert : IntMatrix or nested sequence of ints
        Square Seifert matrix ``A``.  ``A + A^T`` must have odd determinant.
    alexander_coeffs : sequence of int, optional
        Alexander polynomial, ascending degree.  Only used as a cross-check
        of the determinant.

    Raises
    ------
    InvalidKnotDataError
        Even determinant.
    InconsistentKnotDataError
        The Alexander polynomial gives a different determinant.
    """
    A = IntMatrix.coerce(seifert)
    if not A.is_square:
        raise InvalidKnotDataError(f"Seifert matrix must be square, got {A.nrows}x{A.ncols}")
    M = A + A.T
    signed = determinant(M)
    if signed % 2 == 0:
        raise InvalidKnotDataError(
            f"det(A + A^T) = {signed} is even: input is not a knot's Seifert matrix"
        )
    if alexander_coeffs is not None:
        alex = determinant_from_alexander(alexander_coeffs)
        if alex != abs(signed):
            raise InconsistentKnotDataError(
                f"inconsistent knot data for {label!r}: |Delta(-1)| = {alex} "
                f"but |det(A + A^T)| = {abs(signed)}"
            )
    form = linking_form_from_seifert(A)
    if form.group.order != abs(signed):
        raise AssertionError("Smith form and determinant disagree on |H_1|")
    return report_from_form(label, form, oracle_bound=oracle_bound, factorizer=factorizer)
