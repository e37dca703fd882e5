"""Exact integer and rational linear algebra.

Everything is computed with Python's arbitrary-precision integers and
``fractions.Fraction``.  There is deliberately no floating point anywhere:
every predicate downstream (membership, unimodularity, volumes) reduces to
the exact operations in this module.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatchError, SingularMatrixError

#: Hard cap on matrix dimensions.  This is a desk-scale tool; the cap keeps
#: accidental huge inputs from turning exact elimination into a hang.
MAX_DIM = 16


class IntMatrix:
    """Immutable dense integer matrix, row-major, arbitrary precision."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: Iterable[Iterable[int]]):
        data = tuple(tuple(row) for row in rows)
        if not data or not data[0]:
            raise DimensionMismatchError("matrix dimensions must be at least 1x1")
        ncols = len(data[0])
        for row in data:
            if len(row) != ncols:
                raise DimensionMismatchError("ragged rows in matrix")
            for x in row:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise TypeError(f"matrix entries must be int, got {x!r}")
        if len(data) > MAX_DIM or ncols > MAX_DIM:
            raise DimensionMismatchError(
                f"matrix dimensions capped at {MAX_DIM}, got {len(data)}x{ncols}"
            )
        self.rows = len(data)
        self.cols = ncols
        self.data = data

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]]) -> "IntMatrix":
        if not columns:
            raise DimensionMismatchError("need at least one column")
        return cls(tuple(zip(*columns)))

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.data)

    def columns(self) -> tuple:
        return tuple(zip(*self.data))

    def diagonal(self) -> tuple:
        return tuple(self.data[i][i] for i in range(min(self.rows, self.cols)))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(zip(*self.data))

    def mul_vector(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise DimensionMismatchError("vector length does not match column count")
        return tuple(sum(a * x for a, x in zip(row, v)) for row in self.data)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionMismatchError("inner dimensions do not match")
        cols = other.columns()
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.data)
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMatrix) and self.data == other.data

    def __hash__(self) -> int:
        return hash(self.data)

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self.data]})"


def determinant(m: IntMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination.

    Every intermediate value is an integer (the interior division is exact),
    so there is no rounding and no rational blow-up.
    """
    if m.rows != m.cols:
        raise DimensionMismatchError("determinant requires a square matrix")
    n = m.rows
    a = [list(row) for row in m.data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            row_i = a[i]
            row_k = a[k]
            lead = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - lead * row_k[j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def solve_rational(m: IntMatrix, b: Sequence) -> tuple:
    """Exact solution x of ``m @ x = b`` as a tuple of Fractions.

    Raises SingularMatrixError when det(m) = 0.  The right-hand side may be
    integer or rational; entries of the result are always in lowest terms
    (``Fraction`` normalises automatically).
    """
    if m.rows != m.cols:
        raise DimensionMismatchError("solve requires a square matrix")
    n = m.rows
    if len(b) != n:
        raise DimensionMismatchError("right-hand side length does not match")
    a = [[Fraction(x) for x in row] + [Fraction(v)] for row, v in zip(m.data, b)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot_row is None:
            raise SingularMatrixError("matrix is singular")
        if pivot_row != col:
            a[col], a[pivot_row] = a[pivot_row], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return tuple(a[i][n] for i in range(n))


def integral_solution(m: IntMatrix, b: Sequence[int]):
    """Integer solution w of ``m @ w = b``, or None when none exists.

    Raises SingularMatrixError when det(m) = 0; the rational solution is
    unique, so integrality of that solution is the whole question.
    """
    x = solve_rational(m, b)
    if all(v.denominator == 1 for v in x):
        return tuple(int(v) for v in x)
    return None


def _ext_gcd(a: int, b: int) -> tuple:
    """(g, s, t) with s*a + t*b = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def hermite_normal_form(m: IntMatrix) -> tuple:
    """Column-style Hermite normal form.

    Returns (H, U) with U unimodular (|det U| = 1) and ``m @ U == H``, so H
    is obtained from m by integer column operations and generates the same
    integer column span.  Convention: pivots are positive, sit on the
    leading columns, entries to the left of each pivot are reduced into
    [0, pivot), and all-zero columns are pushed to the right.
    """
    h = [list(row) for row in m.data]
    nrows, ncols = m.rows, m.cols
    u = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def swap_cols(a, b):
        for row in h:
            row[a], row[b] = row[b], row[a]
        for row in u:
            row[a], row[b] = row[b], row[a]

    def combine_cols(a, b, s, t, p, q):
        # columns (a, b) <- (s*col_a + t*col_b, p*col_a + q*col_b)
        for row in h:
            ca, cb = row[a], row[b]
            row[a], row[b] = s * ca + t * cb, p * ca + q * cb
        for row in u:
            ca, cb = row[a], row[b]
            row[a], row[b] = s * ca + t * cb, p * ca + q * cb

    def add_multiple(dst, src, factor):
        for row in h:
            row[dst] += factor * row[src]
        for row in u:
            row[dst] += factor * row[src]

    pivot = 0
    for i in range(nrows):
        if pivot >= ncols:
            break
        j0 = next((j for j in range(pivot, ncols) if h[i][j] != 0), None)
        if j0 is None:
            continue
        if j0 != pivot:
            swap_cols(pivot, j0)
        for j in range(pivot + 1, ncols):
            if h[i][j] == 0:
                continue
            a, b = h[i][pivot], h[i][j]
            g, s, t = _ext_gcd(a, b)
            combine_cols(pivot, j, s, t, -(b // g), a // g)
        if h[i][pivot] < 0:
            for row in h:
                row[pivot] = -row[pivot]
            for row in u:
                row[pivot] = -row[pivot]
        for j in range(pivot):
            q = h[i][j] // h[i][pivot]
            if q:
                add_multiple(j, pivot, -q)
        pivot += 1
    return IntMatrix(h), IntMatrix(u)


def adjugate(m: IntMatrix) -> IntMatrix:
    """Adjugate matrix: adj(m) = det(m) * inverse(m), always integral."""
    d = determinant(m)
    if d == 0:
        raise SingularMatrixError("adjugate of a singular matrix is not supported here")
    n = m.rows
    cols = []
    for j in range(n):
        e = [d if i == j else 0 for i in range(n)]
        x = solve_rational(m, e)
        assert all(v.denominator == 1 for v in x)
        cols.append(tuple(int(v) for v in x))
    return IntMatrix.from_columns(cols)


def rank_of_rows(rows: Sequence[Sequence]) -> int:
    """Rank of a raw row list over the rationals (no size cap; internal)."""
    mat = [[Fraction(x) for x in row] for row in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    for col in range(ncols):
        pivot_row = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if pivot_row is None:
            continue
        mat[rank], mat[pivot_row] = mat[pivot_row], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                factor = mat[r][col]
                mat[r] = [x - factor * y for x, y in zip(mat[r], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return rank
