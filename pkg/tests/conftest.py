import itertools
import random
from math import gcd, prod

import pytest

from chiralcheck.linalg import IntMatrix

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _criteria[mark.args[0]] = (mark.args[1], rep.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        title, outcome = _criteria[n]
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {n:>2}: {title}")


# ---------------------------------------------------------------- oracles

def leibniz_det(rows):
    """Determinant by the permutation expansion (no elimination)."""
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        total += (-1) ** inversions * prod(rows[i][perm[i]] for i in range(n))
    return total


def determinantal_divisors(rows):
    """Invariant factors d_k = D_k / D_{k-1}, D_k = gcd of all k x k minors."""
    m, n = len(rows), len(rows[0]) if rows else 0
    out, prev = [], 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for r in itertools.combinations(range(m), k):
            for c in itertools.combinations(range(n), k):
                g = gcd(g, leibniz_det([[rows[i][j] for j in c] for i in r]))
        if g == 0:
            out.extend([0] * (min(m, n) - k + 1))
            break
        out.append(g // prev)
        prev = g
    return out


def random_matrix(rng, m, n, lo=-9, hi=9):
    return IntMatrix([[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)])


def random_unimodular(rng, n, steps=12):
    a = IntMatrix.identity(n).tolist()
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            a[i] = [-x for x in a[i]]
            continue
        q = rng.randint(-3, 3)
        a[i] = [x + q * y for x, y in zip(a[i], a[j])]
        if rng.random() < 0.3:
            a[i], a[j] = a[j], a[i]
    return IntMatrix(a)


def random_seifert(rng, genus, lo=-4, hi=4):
    """Random integer A with A - A^T the standard symplectic matrix.

    Every such matrix is a Seifert matrix of some knot, and
    det(A + A^T) is then odd.
    """
    n = 2 * genus
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            x = rng.randint(lo, hi)
            a[i][j] = x
            a[j][i] = x
    for g in range(genus):
        a[2 * g][2 * g + 1] += 1
    return IntMatrix(a)


@pytest.fixture
def rng():
    return random.Random(20261018)
