"""Finite abelian groups in invariant-factor form, and their primary parts."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, lcm, prod
from typing import Iterator, Tuple

from .errors import InfiniteHomologyError
from .linalg import IntMatrix, SmithDecomposition, smith_normal_form
from .numtheory import Factorizer, factorize, is_prime, valuation

__all__ = [
    "AbelianGroup",
    "PrimaryPart",
    "group_from_presentation",
    "group_from_smith",
    "order",
    "primary_part",
    "primary_decomposition",
]


@dataclass(frozen=True)
class AbelianGroup:
    """``Z/f1 + Z/f2 + ...`` with every ``f_i >= 2`` and ``f_i | f_{i+1}``.

    The trivial group is the empty factor list.
    """

    invariant_factors: Tuple[int, ...] = ()

    def __post_init__(self):
        fs = tuple(int(f) for f in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", fs)
        if any(f < 2 for f in fs):
            raise ValueError(f"invariant factors must be >= 2: {fs}")
        if any(b % a for a, b in zip(fs, fs[1:])):
            raise ValueError(f"invariant factors must form a divisibility chain: {fs}")

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def rank(self) -> int:
        """Number of cyclic summands (minimal number of generators)."""
        return len(self.invariant_factors)

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    @property
    def is_cyclic(self) -> bool:
        return len(self.invariant_factors) <= 1

    def elements(self) -> Iterator[Tuple[int, ...]]:
        """All elements as coefficient tuples, first coordinate slowest."""
        return itertools.product(*(range(f) for f in self.invariant_factors))

    def element_order(self, x) -> int:
        return lcm(1, *(f // gcd(a % f, f) for a, f in zip(x, self.invariant_factors)))

    def __str__(self) -> str:
        if self.is_trivial:
            return "0"
        return " + ".join(f"Z/{f}" for f in self.invariant_factors)


@dataclass(frozen=True)
class PrimaryPart:
    """``Z/p^e1 + Z/p^e2 + ...`` with ``1 <= e1 <= e2 <= ...``."""

    prime: int
    exponents: Tuple[int, ...] = ()

    def __post_init__(self):
        es = tuple(int(e) for e in self.exponents)
        object.__setattr__(self, "exponents", es)
        if not is_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")
        if any(e < 1 for e in es) or list(es) != sorted(es):
            raise ValueError(f"exponents must be positive and ascending: {es}")

    @property
    def is_zero(self) -> bool:
        return not self.exponents

    @property
    def is_cyclic(self) -> bool:
        return len(self.exponents) <= 1

    @property
    def order(self) -> int:
        return self.prime ** sum(self.exponents)

    def as_group(self) -> AbelianGroup:
        return AbelianGroup(tuple(self.prime ** e for e in self.exponents))


def group_from_presentation(M) -> AbelianGroup:
    """The group ``Z^n / M Z^n`` presented by the square matrix ``M``.

    Raises :class:`InfiniteHomologyError` when ``det M == 0``.
    """
    M = IntMatrix.coerce(M)
    if not M.is_square:
        raise ValueError(f"presentation matrix must be square, got {M.nrows}x{M.ncols}")
    return group_from_smith(smith_normal_form(M))


def group_from_smith(snf: SmithDecomposition) -> AbelianGroup:
    """Group presented by ``snf.A``, read off its Smith diagonal."""
    d = snf.diagonal
    if snf.A.nrows != snf.A.ncols:
        raise ValueError("presentation matrix must be square")
    if any(x == 0 for x in d):
        raise InfiniteHomologyError(
            "infinite homology: input is not the presentation matrix of a knot's branched cover"
        )
    return AbelianGroup(tuple(x for x in d if x > 1))


def order(G: AbelianGroup) -> int:
    return G.order


def primary_part(G: AbelianGroup, p: int) -> PrimaryPart:
    """The subgroup of elements killed by some power of ``p``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    exps = [valuation(f, p) for f in G.invariant_factors]
    return PrimaryPart(p, tuple(e for e in exps if e))


def primary_decomposition(G: AbelianGroup, factorizer: Factorizer = factorize) -> Tuple[PrimaryPart, ...]:
    """Nonzero primary parts, one per prime dividing the order."""
    return tuple(primary_part(G, p) for p, _ in factorizer(G.order))

