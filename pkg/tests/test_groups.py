import pytest

from chiralcheck.errors import InfiniteHomologyError
from chiralcheck.groups import (
    AbelianGroup,
    PrimaryPart,
    group_from_presentation,
    order,
    primary_decomposition,
    primary_part,
)
from chiralcheck.linalg import IntMatrix, determinant
from chiralcheck.numtheory import factorize
from conftest import random_matrix, random_unimodular


def exponents_by_counting(G, p):
    """p-primary exponents recovered from |{x : p^k x = 0}| alone.

    If the part is sum Z/p^{e_i}, then log_p |H[p^k]| = sum min(e_i, k),
    so the number of exponents >= k is the k-th difference.
    """
    counts = [1]
    k = 0
    while True:
        k += 1
        c = sum(1 for x in G.elements() if all((p**k * a) % f == 0 for a, f in zip(x, G.invariant_factors)))
        counts.append(c)
        if c == counts[-2] and k > 1:
            break
    logs = []
    for c in counts:
        e = 0
        while c > 1:
            c //= p
            e += 1
        logs.append(e)
    at_least = [logs[k] - logs[k - 1] for k in range(1, len(logs))]
    exps = []
    for k in range(1, len(at_least) + 1):
        n_exactly = at_least[k - 1] - (at_least[k] if k < len(at_least) else 0)
        exps.extend([k] * n_exactly)
    return tuple(sorted(exps))


class TestAbelianGroup:
    def test_invariants(self):
        with pytest.raises(ValueError):
            AbelianGroup((1, 3))
        with pytest.raises(ValueError):
            AbelianGroup((3, 5))
        assert AbelianGroup(()).order == 1
        assert AbelianGroup((3, 3)).order == 9

    def test_elements(self):
        G = AbelianGroup((2, 4))
        els = list(G.elements())
        assert len(els) == 8 and len(set(els)) == 8
        assert G.element_order((1, 1)) == 4
        assert G.element_order((1, 2)) == 2


class TestPresentation:
    @pytest.mark.parametrize(
        "M, factors",
        [([[2, 1], [1, -4]], (9,)), ([[1, 0], [0, 1]], ()), ([[3, 0], [0, 3]], (3, 3))],
    )
    def test_examples(self, M, factors):
        assert group_from_presentation(M).invariant_factors == factors

    def test_infinite(self):
        with pytest.raises(InfiniteHomologyError):
            group_from_presentation([[1, 1], [1, 1]])

    def test_non_square(self):
        with pytest.raises(ValueError):
            group_from_presentation([[1, 2]])

    def test_order_equals_abs_det(self, rng):
        for _ in range(200):
            n = rng.randint(1, 5)
            M = random_matrix(rng, n, n)
            d = determinant(M)
            if d == 0:
                continue
            assert order(group_from_presentation(M)) == abs(d)

    def test_invariant_under_unimodular_changes(self, rng):
        for _ in range(100):
            n = rng.randint(1, 4)
            M = random_matrix(rng, n, n)
            if determinant(M) == 0:
                continue
            P, Q = random_unimodular(rng, n), random_unimodular(rng, n)
            assert group_from_presentation(P @ M @ Q) == group_from_presentation(M)


class TestPrimaryPart:
    @pytest.mark.parametrize(
        "factors, p, exps, cyclic",
        [((9,), 3, (2,), True), ((9,), 7, (), True), ((3, 9), 3, (1, 2), False), ((15, 45), 3, (1, 2), False)],
    )
    def test_examples(self, factors, p, exps, cyclic):
        part = primary_part(AbelianGroup(factors), p)
        assert part.exponents == exps
        assert part.is_cyclic is cyclic

    def test_z3_plus_z9_by_element_orders(self):
        # Z/3 + Z/9 has 8 elements of order 3 (a cyclic 3-group has only 2)
        G = AbelianGroup((3, 9))
        assert sum(1 for x in G.elements() if G.element_order(x) == 3) == 8
        assert exponents_by_counting(G, 3) == (1, 2)

    def test_not_prime(self):
        with pytest.raises(ValueError):
            primary_part(AbelianGroup((9,)), 9)

    def test_matches_counting_oracle(self, rng):
        for _ in range(60):
            M = random_matrix(rng, 3, 3, -5, 5)
            if determinant(M) == 0:
                continue
            G = group_from_presentation(M)
            if G.order > 3000:
                continue
            for p, _ in factorize(G.order):
                assert primary_part(G, p).exponents == exponents_by_counting(G, p)

    def test_decomposition_multiplies_to_order(self, rng):
        for _ in range(100):
            M = random_matrix(rng, 4, 4)
            if determinant(M) == 0:
                continue
            G = group_from_presentation(M)
            parts = primary_decomposition(G)
            total = 1
            for part in parts:
                total *= part.order
            assert total == G.order

    def test_idempotent(self, rng):
        for _ in range(100):
            M = random_matrix(rng, 4, 4)
            if determinant(M) == 0:
                continue
            G = group_from_presentation(M)
            for p, _ in factorize(G.order):
                part = primary_part(G, p)
                n = len(part.exponents)
                D = IntMatrix([[p**part.exponents[i] if i == j else 0 for j in range(n)] for i in range(n)],
                              shape=(n, n))
                again = primary_part(group_from_presentation(D), p)
                assert again == part
                assert part.as_group() == group_from_presentation(D)

    def test_primary_part_validation(self):
        with pytest.raises(ValueError):
            PrimaryPart(3, (2, 1))
        with pytest.raises(ValueError):
            PrimaryPart(4, (1,))
