"""Elementary number theory: primes, factorizations, squares mod p^n.

Knot determinants at table scale are small, so trial division is the
factorization method; anything with the same signature as
:func:`factorize` can be passed where a ``factorizer`` is accepted.
"""
from __future__ import annotations

from math import gcd, isqrt
from typing import Callable, List, Tuple

__all__ = [
    "Factorization",
    "Factorizer",
    "is_prime",
    "factorize",
    "valuation",
    "is_quadratic_residue",
    "mod4_class",
    "is_unit_square",
    "odd_primes_below",
]

Factorization = List[Tuple[int, int]]
Factorizer = Callable[[int], Factorization]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def factorize(n: int) -> Factorization:
    """Prime factorization of ``n >= 1`` as ``[(prime, multiplicity), ...]``.

    >>> factorize(77)
    [(7, 1), (11, 1)]
    >>> factorize(1)
    []
    """
    if n < 1:
        raise ValueError(f"factorize needs a positive integer, got {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def valuation(n: int, p: int) -> int:
    """Exponent of the prime ``p`` in the nonzero integer ``n``."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def is_quadratic_residue(a: int, p: int) -> bool:
    """Euler's criterion: is ``a`` a square modulo the odd prime ``p``?

    ``a`` must be a unit mod ``p``; zero mod ``p`` is neither a residue
    nor a non-residue of the unit group and is rejected.
    """
    if p == 2 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    if a % p == 0:
        raise ValueError(f"{a} is divisible by {p}")
    return pow(a, (p - 1) // 2, p) == 1


def mod4_class(p: int) -> int:
    if p == 2 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    return p % 4


def is_unit_square(u: int, p: int, n: int) -> bool:
    """Is the unit ``u`` a square in the multiplicative group mod ``p**n``?

    For odd ``p`` a unit lifts from a square mod p by Hensel's lemma, so the
    question reduces to Euler's criterion.  For ``p == 2`` the squares are
    everything mod 2, ``1 mod 4`` mod 4, and ``1 mod 8`` from 8 on.
    """
    _require_prime(p)
    if n < 1:
        raise ValueError("exponent must be >= 1")
    if gcd(u, p) != 1:
        raise ValueError(f"{u} is not a unit mod {p}**{n}")
    if p != 2:
        return is_quadratic_residue(u, p)
    if n == 1:
        return True
    if n == 2:
        return u % 4 == 1
    return u % 8 == 1


def odd_primes_below(limit: int) -> List[int]:
    """Odd primes ``p < limit`` by a sieve."""
    if limit <= 3:
        return []
    sieve = bytearray([1]) * limit
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(limit - 1) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, limit, i)))
    return [i for i in range(3, limit) if sieve[i]]
