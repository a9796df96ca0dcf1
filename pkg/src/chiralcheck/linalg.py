"""Exact integer matrix algebra.

Everything here runs on Python ints and :class:`fractions.Fraction`, so
no intermediate value can overflow.  Matrices are tiny (a Seifert matrix
of a tabulated knot is at most about 30 x 30), hence the dense
list-of-rows representation.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import SingularMatrixError

__all__ = [
    "IntMatrix",
    "SmithDecomposition",
    "smith_normal_form",
    "determinant",
    "rational_inverse",
    "unimodular_inverse",
    "block_diagonal",
]

RationalMatrix = Tuple[Tuple[Fraction, ...], ...]


def _as_int(x, i, j) -> int:
    if type(x) is int:
        return x
    if isinstance(x, bool) or not isinstance(x, Integral):
        raise TypeError(f"entry ({i}, {j}) is not an integer: {x!r}")
    return int(x)


class IntMatrix:
    """Immutable dense matrix of arbitrary-precision integers.

    Build one from nested rows, ``IntMatrix([[1, 0], [1, -2]])``.  Because an
    empty row list cannot carry a column count, pass ``shape`` for matrices
    with zero rows.
    """

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable[int]] = (), shape: Optional[Tuple[int, int]] = None):
        data = tuple(
            tuple(_as_int(x, i, j) for j, x in enumerate(row)) for i, row in enumerate(rows)
        )
        if shape is None:
            nrows = len(data)
            ncols = len(data[0]) if data else 0
        else:
            nrows, ncols = shape
            if len(data) != nrows:
                raise ValueError(f"expected {nrows} rows, got {len(data)}")
        for i, row in enumerate(data):
            if len(row) != ncols:
                raise ValueError(f"row {i} has length {len(row)}, expected {ncols}")
        self._rows = data
        self.nrows = nrows
        self.ncols = ncols

    @classmethod
    def _wrap(cls, rows, nrows: int, ncols: int) -> "IntMatrix":
        # rows must already be a tuple of int tuples of the right shape
        m = object.__new__(cls)
        m._rows = rows
        m.nrows = nrows
        m.ncols = ncols
        return m

    @classmethod
    def coerce(cls, obj) -> "IntMatrix":
        if isinstance(obj, cls):
            return obj
        return cls(obj)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(((int(i == j) for j in range(n)) for i in range(n)), shape=(n, n))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls(((0,) * ncols for _ in range(nrows)), shape=(nrows, ncols))

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Sequence[int]) -> "IntMatrix":
        """Build from a flat row-major sequence."""
        if len(entries) != nrows * ncols:
            raise ValueError(f"{len(entries)} entries cannot fill a {nrows}x{ncols} matrix")
        return cls((entries[i * ncols:(i + 1) * ncols] for i in range(nrows)), shape=(nrows, ncols))

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    @property
    def entries(self) -> Tuple[int, ...]:
        """Row-major flat tuple of entries."""
        return tuple(x for row in self._rows for x in row)

    def rows(self) -> Tuple[Tuple[int, ...], ...]:
        return self._rows

    def row(self, i: int) -> Tuple[int, ...]:
        return self._rows[i]

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(row[j] for row in self._rows)

    def tolist(self) -> List[List[int]]:
        return [list(row) for row in self._rows]

    def __getitem__(self, idx: Tuple[int, int]) -> int:
        i, j = idx
        return self._rows[i][j]

    @property
    def T(self) -> "IntMatrix":
        if not self.nrows:
            return IntMatrix.zeros(self.ncols, 0)
        return IntMatrix._wrap(tuple(zip(*self._rows)), self.ncols, self.nrows)

    def transpose(self) -> "IntMatrix":
        return self.T

    def __add__(self, other) -> "IntMatrix":
        other = IntMatrix.coerce(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return IntMatrix._wrap(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)),
            self.nrows, self.ncols,
        )

    def __sub__(self, other) -> "IntMatrix":
        return self + (-IntMatrix.coerce(other))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix._wrap(tuple(tuple(-a for a in r) for r in self._rows), self.nrows, self.ncols)

    def __matmul__(self, other) -> "IntMatrix":
        other = IntMatrix.coerce(other)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = [other.column(j) for j in range(other.ncols)]
        return IntMatrix._wrap(
            tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self._rows),
            self.nrows, other.ncols,
        )

    def __eq__(self, other) -> bool:
        if isinstance(other, IntMatrix):
            return self.shape == other.shape and self._rows == other._rows
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.shape, self._rows))

    def __repr__(self) -> str:
        if not self.nrows:
            return f"IntMatrix([], shape={self.shape})"
        return f"IntMatrix({self.tolist()!r})"

    def is_diagonal(self) -> bool:
        return all(x == 0 for i, row in enumerate(self._rows) for j, x in enumerate(row) if i != j)

    def diagonal(self) -> Tuple[int, ...]:
        return tuple(self._rows[i][i] for i in range(min(self.shape)))


def block_diagonal(*blocks) -> IntMatrix:
    blocks = [IntMatrix.coerce(b) for b in blocks]
    nrows = sum(b.nrows for b in blocks)
    ncols = sum(b.ncols for b in blocks)
    out = [[0] * ncols for _ in range(nrows)]
    r = c = 0
    for b in blocks:
        for i in range(b.nrows):
            out[r + i][c:c + b.ncols] = b.row(i)
        r += b.nrows
        c += b.ncols
    return IntMatrix(out, shape=(nrows, ncols))


@dataclass(frozen=True)
class SmithDecomposition:
    """Result of :func:`smith_normal_form`: ``U @ A @ V == D``."""

    A: IntMatrix
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> Tuple[int, ...]:
        return self.D.diagonal()

    def verify(self) -> bool:
        """Re-check every invariant of the decomposition from scratch."""
        if self.U @ self.A @ self.V != self.D or not self.D.is_diagonal():
            return False
        if abs(determinant(self.U)) != 1 or abs(determinant(self.V)) != 1:
            return False
        d = self.diagonal
        if any(x < 0 for x in d):
            return False
        # 0 | 0 is the only divisibility involving zero that is allowed
        return all((b % a == 0) if a else b == 0 for a, b in zip(d, d[1:]))


def _swap_rows(m, i, j):
    m[i], m[j] = m[j], m[i]


def _swap_cols(m, i, j):
    for row in m:
        row[i], row[j] = row[j], row[i]


def _add_row(m, dst, src, q):
    # row[dst] += q * row[src]
    rs = m[src]
    m[dst] = [a + q * b for a, b in zip(m[dst], rs)]


def _add_col(m, dst, src, q):
    for row in m:
        row[dst] += q * row[src]


def _min_pivot(a, s):
    best = None
    best_abs = 0
    for i in range(s, len(a)):
        row = a[i]
        for j in range(s, len(row)):
            x = row[j]
            if x and (best is None or abs(x) < best_abs):
                best, best_abs = (i, j), abs(x)
    return best


def smith_normal_form(A) -> SmithDecomposition:
    """Smith normal form with unimodular transforms.

    Pivoting always takes the nonzero entry of smallest absolute value in the
    remaining submatrix, the first one in row-major order on ties, so the
    output (including ``U`` and ``V``) is a deterministic function of ``A``.
    Diagonal entries come out non-negative and form a divisibility chain.
    """
    A = IntMatrix.coerce(A)
    m, n = A.shape
    a = A.tolist()
    u = IntMatrix.identity(m).tolist()
    v = IntMatrix.identity(n).tolist()

    for s in range(min(m, n)):
        while True:
            piv = _min_pivot(a, s)
            if piv is None:
                break
            pi, pj = piv
            if pi != s:
                _swap_rows(a, s, pi)
                _swap_rows(u, s, pi)
            if pj != s:
                _swap_cols(a, s, pj)
                _swap_cols(v, s, pj)
            p = a[s][s]
            clean = True
            for i in range(s + 1, m):
                q = a[i][s] // p
                if q:
                    _add_row(a, i, s, -q)
                    _add_row(u, i, s, -q)
                if a[i][s]:
                    clean = False
            for j in range(s + 1, n):
                q = a[s][j] // p
                if q:
                    _add_col(a, j, s, -q)
                    _add_col(v, j, s, -q)
                if a[s][j]:
                    clean = False
            if not clean:
                continue
            bad = next(
                (i for i in range(s + 1, m) if any(a[i][j] % p for j in range(s + 1, n))),
                None,
            )
            if bad is None:
                break
            # pull the offending row into row s; the next pass leaves a smaller remainder
            _add_row(a, s, bad, 1)
            _add_row(u, s, bad, 1)
        if piv is None:
            break
        if a[s][s] < 0:
            a[s] = [-x for x in a[s]]
            u[s] = [-x for x in u[s]]

    def wrap(rows, r, c):
        return IntMatrix._wrap(tuple(map(tuple, rows)), r, c)

    return SmithDecomposition(A=A, U=wrap(u, m, m), D=wrap(a, m, n), V=wrap(v, n, n))


def determinant(A) -> int:
    """Exact signed determinant by Bareiss fraction-free elimination."""
    A = IntMatrix.coerce(A)
    if not A.is_square:
        raise ValueError(f"determinant of non-square {A.nrows}x{A.ncols} matrix")
    n = A.nrows
    if n == 0:
        return 1
    a = A.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def rational_inverse(A) -> RationalMatrix:
    """Exact inverse over the rationals by Gauss-Jordan elimination.

    Raises
    ------
    SingularMatrixError
        If ``A`` has determinant zero.  For a knot's presentation matrix
        this cannot happen, so it points at bad input.
    """
    A = IntMatrix.coerce(A)
    if not A.is_square:
        raise ValueError(f"cannot invert non-square {A.nrows}x{A.ncols} matrix")
    n = A.nrows
    aug = [
        [Fraction(x) for x in A.row(i)] + [Fraction(int(i == j)) for j in range(n)]
        for i in range(n)
    ]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c]), None)
        if piv is None:
            raise SingularMatrixError("singular presentation matrix (determinant 0)")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for r in range(n):
            f = aug[r][c]
            if r != c and f:
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)


def unimodular_inverse(U) -> IntMatrix:
    """Integer inverse of a matrix with determinant +1 or -1."""
    inv = rational_inverse(U)
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    n = len(inv)
    return IntMatrix(((int(x) for x in row) for row in inv), shape=(n, n))
