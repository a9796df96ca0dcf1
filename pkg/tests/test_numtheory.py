from math import gcd, prod

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from chiralcheck.numtheory import (
    factorize,
    is_prime,
    is_quadratic_residue,
    is_unit_square,
    mod4_class,
    odd_primes_below,
    valuation,
)


def brute_primes(limit):
    return [n for n in range(2, limit) if all(n % d for d in range(2, n))]


def test_is_prime_small():
    assert [n for n in range(200) if is_prime(n)] == brute_primes(200)


def test_sieve_agrees():
    assert odd_primes_below(1000) == [p for p in brute_primes(1000) if p != 2]


@pytest.mark.parametrize("n, f", [(77, [(7, 1), (11, 1)]), (1, []), (9, [(3, 2)]), (2**10 * 3, [(2, 10), (3, 1)])])
def test_factorize_examples(n, f):
    assert factorize(n) == f


def test_factorize_zero():
    with pytest.raises(ValueError):
        factorize(0)


@given(st.integers(1, 10**7))
def test_factorize_reconstructs(n):
    f = factorize(n)
    assert prod(p**e for p, e in f) == n
    assert all(is_prime(p) and e >= 1 for p, e in f)
    assert [p for p, _ in f] == sorted({p for p, _ in f})


@given(st.integers(1, 10**5), st.integers(1, 10**5))
def test_factorize_merges_on_coprime_product(m, n):
    assume(gcd(m, n) == 1)
    assert factorize(m * n) == sorted(factorize(m) + factorize(n))


def test_valuation():
    assert valuation(27, 3) == 3
    assert valuation(-77, 7) == 1
    assert valuation(5, 3) == 0


@pytest.mark.parametrize("a, p, expected", [(-1, 5, True), (-1, 7, False), (1, 3, True), (1, 101, True)])
def test_quadratic_residue_examples(a, p, expected):
    assert is_quadratic_residue(a, p) is expected


def test_quadratic_residue_contract():
    with pytest.raises(ValueError):
        is_quadratic_residue(7, 7)
    with pytest.raises(ValueError):
        is_quadratic_residue(1, 2)
    with pytest.raises(ValueError):
        is_quadratic_residue(1, 9)


def test_euler_criterion_matches_enumeration():
    for p in odd_primes_below(500):
        squares = {x * x % p for x in range(1, p)}
        for a in range(1, p):
            assert is_quadratic_residue(a, p) == (a in squares), (a, p)


def test_minus_one_residue_iff_one_mod_four():
    for p in odd_primes_below(10**4):
        assert is_quadratic_residue(-1, p) == (mod4_class(p) == 1)


@pytest.mark.parametrize("p, c", [(7, 3), (5, 1), (11, 3)])
def test_mod4_class(p, c):
    assert mod4_class(p) == c


def test_mod4_class_rejects_two():
    with pytest.raises(ValueError):
        mod4_class(2)


def test_unit_squares_match_enumeration():
    for p in (2, 3, 5, 7, 11, 13):
        n = 1
        while p**n <= 300:
            q = p**n
            squares = {r * r % q for r in range(q) if r % p}
            for u in range(1, q):
                if u % p:
                    assert is_unit_square(u, p, n) == (u in squares), (u, p, n)
            n += 1
