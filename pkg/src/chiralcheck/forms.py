"""Torsion linking forms on the homology of the double branched cover.

A form is stored as a Gram matrix of fractions in ``[0, 1)`` against the
invariant-factor generators of its group.  For a Seifert matrix ``A`` the
group is presented by ``M = A + A^T`` and the form is ``x^T M^{-1} y`` mod 1.
The global sign of that formula is a convention; every verdict built on
top of it compares a form with its negative, so the sign never matters.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import OracleBoundExceeded, SingularFormError
from .groups import AbelianGroup, group_from_smith
from .linalg import IntMatrix, rational_inverse, smith_normal_form, unimodular_inverse
from .numtheory import is_prime, is_unit_square, valuation

__all__ = [
    "TorsionLinkingForm",
    "CyclicLinkingForm",
    "DEFAULT_ORACLE_BOUND",
    "linking_form_from_presentation",
    "linking_form_from_seifert",
    "negate",
    "restrict_to_primary",
    "cyclic_parameter",
    "cyclic_isometric",
    "find_self_negation_isometry",
    "brute_force_self_negation_isometric",
]

DEFAULT_ORACLE_BOUND = 10**6

# int64 holds r*r and k*(r*r mod q) while q*q stays below this
_INT64_SAFE = 2**62

Gram = Tuple[Tuple[Fraction, ...], ...]


def _mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True)
class TorsionLinkingForm:
    """Symmetric pairing ``H x H -> Q/Z`` on a finite abelian group ``H``.

    ``gram[i][j]`` is the value on the i-th and j-th invariant-factor
    generators.  Entries are reduced into ``[0, 1)`` on construction.
    Nonsingularity is not checked here (it needs an enumeration); call
    :meth:`is_nonsingular` when it matters.
    """

    group: AbelianGroup
    gram: Gram

    def __post_init__(self):
        n = self.group.rank
        gram = tuple(tuple(_mod1(Fraction(x)) for x in row) for row in self.gram)
        if len(gram) != n or any(len(row) != n for row in gram):
            raise ValueError(f"gram matrix must be {n}x{n}")
        for i in range(n):
            for j in range(n):
                if gram[i][j] != gram[j][i]:
                    raise ValueError("gram matrix is not symmetric")
                if (self.group.invariant_factors[i] * gram[i][j]).denominator != 1:
                    raise ValueError(
                        f"value {gram[i][j]} on generator {i} is incompatible with its order "
                        f"{self.group.invariant_factors[i]}"
                    )
        object.__setattr__(self, "gram", gram)

    @classmethod
    def trivial(cls) -> "TorsionLinkingForm":
        return cls(AbelianGroup(()), ())

    def value(self, a: Sequence[int], b: Sequence[int]) -> Fraction:
        """``lambda(a, b)`` for coefficient vectors ``a``, ``b``."""
        total = Fraction(0)
        for i, ai in enumerate(a):
            if ai:
                row = self.gram[i]
                total += ai * sum(bj * row[j] for j, bj in enumerate(b) if bj)
        return _mod1(total)

    def kernel_is_trivial(self, limit: int = 10**5) -> bool:
        """Brute force: no nonzero element pairs trivially with every generator."""
        if self.group.order > limit:
            raise OracleBoundExceeded(f"group of order {self.group.order} exceeds bound {limit}")
        n = self.group.rank
        for x in self.group.elements():
            if any(x) and all(
                _mod1(sum((xi * self.gram[i][j] for i, xi in enumerate(x)), Fraction(0))) == 0
                for j in range(n)
            ):
                return False
        return True

    # For a finite group, an injective adjoint H -> Hom(H, Q/Z) is an isomorphism.
    is_nonsingular = kernel_is_trivial

    def __neg__(self) -> "TorsionLinkingForm":
        return negate(self)


@dataclass(frozen=True)
class CyclicLinkingForm:
    """The form ``(a, b) -> k*a*b / p**n`` on ``Z/p**n``.

    ``k`` is stored reduced mod ``p**n``; it must be prime to ``p`` since
    otherwise the subgroup ``p**(n-1) Z/p**n`` pairs trivially with everything.
    """

    prime: int
    exponent: int
    k: int

    def __post_init__(self):
        if not is_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")
        if self.exponent < 1:
            raise ValueError("exponent must be >= 1")
        object.__setattr__(self, "k", self.k % self.modulus)
        if gcd(self.k, self.prime) != 1:
            raise SingularFormError(
                f"form is singular: {self.prime} divides k={self.k} on Z/{self.modulus}"
            )

    @property
    def modulus(self) -> int:
        return self.prime ** self.exponent

    def to_form(self) -> TorsionLinkingForm:
        return TorsionLinkingForm(AbelianGroup((self.modulus,)), ((Fraction(self.k, self.modulus),),))

    def __neg__(self) -> "CyclicLinkingForm":
        return CyclicLinkingForm(self.prime, self.exponent, -self.k)


def linking_form_from_presentation(M) -> TorsionLinkingForm:
    """Form ``x^T M^{-1} y`` on ``coker M`` for symmetric nonsingular ``M``.

    With ``U M V = D`` the i-th invariant-factor generator is the i-th
    column of ``U^{-1}``; generators with ``d_i = 1`` are zero and dropped.
    """
    M = IntMatrix.coerce(M)
    if M != M.T:
        raise ValueError("presentation matrix of a linking form must be symmetric")
    if M.nrows == 0:
        return TorsionLinkingForm.trivial()
    minv = rational_inverse(M)
    snf = smith_normal_form(M)
    group = group_from_smith(snf)
    w = unimodular_inverse(snf.U)
    keep = [i for i, d in enumerate(snf.diagonal) if d > 1]
    gens = [w.column(i) for i in keep]
    n = M.nrows
    # minv @ g for each generator, then dot with the others
    mg = [[sum(minv[r][c] * g[c] for c in range(n)) for r in range(n)] for g in gens]
    gram = tuple(
        tuple(sum(gi[r] * mgj[r] for r in range(n)) for mgj in mg) for gi in gens
    )
    return TorsionLinkingForm(group, gram)


def linking_form_from_seifert(A) -> TorsionLinkingForm:
    """Linking form of the double branched cover from a Seifert matrix."""
    A = IntMatrix.coerce(A)
    if not A.is_square:
        raise ValueError(f"Seifert matrix must be square, got {A.nrows}x{A.ncols}")
    return linking_form_from_presentation(A + A.T)


def negate(f: TorsionLinkingForm) -> TorsionLinkingForm:
    return TorsionLinkingForm(f.group, tuple(tuple(-x for x in row) for row in f.gram))


def restrict_to_primary(f: TorsionLinkingForm, p: int) -> TorsionLinkingForm:
    """Restriction of ``f`` to the ``p``-primary part of its group.

    A generator of order ``p**e * m`` (``p`` not dividing ``m``) contributes
    ``m`` times itself, an element of order ``p**e``.  The new generators are
    again in invariant-factor order because valuations along a divisibility
    chain are non-decreasing.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    idx, mult, factors = [], [], []
    for i, fi in enumerate(f.group.invariant_factors):
        e = valuation(fi, p)
        if e:
            idx.append(i)
            mult.append(fi // p**e)
            factors.append(p**e)
    gram = tuple(
        tuple(mult[a] * mult[b] * f.gram[i][j] for b, j in enumerate(idx))
        for a, i in enumerate(idx)
    )
    return TorsionLinkingForm(AbelianGroup(tuple(factors)), gram)


def cyclic_parameter(f: TorsionLinkingForm) -> CyclicLinkingForm:
    """Read ``(p, n, k)`` off a form on a cyclic group ``Z/p**n``, ``n >= 1``."""
    fs = f.group.invariant_factors
    if len(fs) != 1:
        raise ValueError(f"expected a nonzero cyclic group, got {f.group}")
    q = fs[0]
    p = next(d for d in range(2, q + 1) if q % d == 0)
    n = valuation(q, p)
    if p**n != q:
        raise ValueError(f"Z/{q} is not a primary cyclic group")
    k = (f.gram[0][0] * q).numerator
    return CyclicLinkingForm(p, n, k)


def cyclic_isometric(f: CyclicLinkingForm, g: CyclicLinkingForm) -> bool:
    """Is there a unit ``r`` with ``k_g = k_f * r**2`` mod ``p**n``?

    Forms on different groups are never isometric.
    """
    if (f.prime, f.exponent) != (g.prime, g.exponent):
        return False
    q = f.modulus
    u = g.k * pow(f.k, -1, q) % q
    return is_unit_square(u, f.prime, f.exponent)


def _check_bound(q: int, bound: int) -> None:
    if q > bound:
        raise OracleBoundExceeded(f"oracle bound exceeded: {q} > {bound}")


def find_self_negation_isometry(f: CyclicLinkingForm, bound: int = DEFAULT_ORACLE_BOUND) -> Optional[int]:
    """Smallest unit ``r`` with ``-k = k*r**2`` mod ``p**n``, by exhaustion.

    Multiplication by such an ``r`` is an isometry from ``-f`` to ``f``;
    every automorphism of ``Z/p**n`` has this form.  Returns ``None`` when
    no unit works.
    """
    q = f.modulus
    _check_bound(q, bound)
    r = np.arange(1, q, dtype=np.int64 if q * q < _INT64_SAFE else object)
    r = r[r % f.prime != 0]
    hits = np.flatnonzero((f.k * ((r * r) % q) + f.k) % q == 0)
    return int(r[hits[0]]) if hits.size else None


def brute_force_self_negation_isometric(f: CyclicLinkingForm, bound: int = DEFAULT_ORACLE_BOUND) -> bool:
    """Exhaustive check whether ``f`` and ``-f`` are isometric."""
    return find_self_negation_isometry(f, bound) is not None
