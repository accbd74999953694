"""Exact integer and rational linear algebra.

Everything here works on plain Python ints and :class:`fractions.Fraction`;
matrices are tuples of row tuples.  Nothing in this module touches floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import combinations
from typing import Sequence

from .errors import (
    DegenerateRowError,
    InvalidArgumentError,
    RankDeficientError,
    SingularMatrixError,
)

Matrix = tuple[tuple[int, ...], ...]


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    """Freeze a nested sequence into a rectangular tuple-of-tuples."""
    m = tuple(tuple(r) for r in rows)
    if not m or not m[0]:
        raise InvalidArgumentError("matrix must have at least one row and column")
    width = len(m[0])
    if any(len(r) != width for r in m):
        raise InvalidArgumentError("ragged matrix")
    return m


def floor_div(t: int, a: int) -> int:
    """Greatest integer not exceeding ``t / a`` for a positive divisor ``a``."""
    if a <= 0:
        raise InvalidArgumentError(f"divisor must be positive, got {a}")
    return t // a


def ceil_div(t: int, a: int) -> int:
    if a <= 0:
        raise InvalidArgumentError(f"divisor must be positive, got {a}")
    return -((-t) // a)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def matvec(a: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def det(m: Sequence[Sequence]) -> int | Fraction:
    """Determinant by fraction-free Bareiss elimination.

    Integer input gives an integer result; every intermediate division is exact.
    """
    n = len(m)
    if any(len(r) != n for r in m):
        raise InvalidArgumentError("determinant of a non-square matrix")
    if n == 0:
        return 1
    a = [list(r) for r in m]
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
            for j in range(k + 1, n):
                num = a[i][j] * pivot - a[i][k] * a[k][j]
                a[i][j] = num // prev if isinstance(num, int) else num / prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def rank(m: Sequence[Sequence]) -> int:
    return len(_echelon([list(r) for r in m])[1])


def _echelon(a: list[list]) -> tuple[list[list], list[int]]:
    """In-place fraction-free row echelon form; returns (rows, pivot columns)."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        pivot = a[r][c]
        pr = a[r]
        for i in range(r + 1, rows):
            ai = a[i]
            f = ai[c]
            if f == 0:
                for j in range(c + 1, cols):
                    ai[j] = ai[j] * pivot // prev if isinstance(ai[j], int) else ai[j] * pivot / prev
            else:
                for j in range(c + 1, cols):
                    num = ai[j] * pivot - f * pr[j]
                    ai[j] = num // prev if isinstance(num, int) else num / prev
            ai[c] = 0
        prev = pivot
        pivots.append(c)
        r += 1
    return a, pivots


def solve_square(m: Sequence[Sequence], rhs: Sequence) -> tuple[Fraction, ...]:
    """Unique exact solution of ``m x = rhs``; raises on a singular matrix."""
    n = len(m)
    if any(len(r) != n for r in m) or len(rhs) != n:
        raise InvalidArgumentError("solve_square needs an n x n matrix and an n-vector")
    a = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(m, rhs)]
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            raise SingularMatrixError("matrix is singular")
        a[k], a[p] = a[p], a[k]
        pk = a[k]
        inv = 1 / pk[k]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k] * inv
                ai = a[i]
                for j in range(k, n + 1):
                    ai[j] -= f * pk[j]
    return tuple(a[i][n] / a[i][i] for i in range(n))


def solve_least_free(rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> tuple[Fraction, ...] | None:
    """Exact solution of an integer system with free variables pinned to zero.

    Returns ``None`` when the system is inconsistent.  Used for interpolation,
    where overdetermined and (on thin domains) underdetermined systems occur.
    """
    if not rows:
        return ()
    width = len(rows[0])
    a = [list(r) + [y] for r, y in zip(rows, rhs)]
    a, pivots = _echelon(a)
    if pivots and pivots[-1] == width:
        return None
    x = [Fraction(0)] * width
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        row = a[r]
        s = Fraction(row[width]) - sum(row[j] * x[j] for j in range(c + 1, width) if x[j])
        x[c] = s / row[c]
    return tuple(x)


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


@dataclass(frozen=True)
class UnimodularReduction:
    """``transformed == A @ U`` with ``U @ U_inverse == I`` and ``det U = +-1``."""

    transformed: Matrix
    U: Matrix
    U_inverse: Matrix


def column_reduce(A: Sequence[Sequence[int]], full: bool = False) -> UnimodularReduction:
    """Unimodular column operations bringing row 1 of ``A`` to ``(g, 0, ..., 0)``.

    ``g`` is the gcd of the row and is made positive.  With ``full=True`` the
    reduction continues row by row until ``A @ U`` is lower triangular
    (column echelon form).  Lattice points map bijectively via ``y = U^-1 x``.
    """
    A = as_matrix(A)
    if all(v == 0 for v in A[0]):
        raise DegenerateRowError("first row is identically zero")
    return _column_reduce(A, full)


@lru_cache(maxsize=4096)
def _column_reduce(A: Matrix, full: bool) -> UnimodularReduction:
    m, n = len(A), len(A[0])
    a = [list(r) for r in A]
    u = [list(r) for r in identity(n)]
    ui = [list(r) for r in identity(n)]

    col = 0
    for r in range(m if full else 1):
        if col >= n:
            break
        row = a[r]
        for q in range(col + 1, n):
            x, y = row[col], row[q]
            if y == 0:
                continue
            g, s, w = _ext_gcd(x, y)
            p1, p2 = x // g, y // g
            # columns (col, q) <- (s*col + w*q, -p2*col + p1*q); inverse acts on rows
            for mat in (a, u):
                for k in range(len(mat)):
                    c0, c1 = mat[k][col], mat[k][q]
                    mat[k][col] = s * c0 + w * c1
                    mat[k][q] = -p2 * c0 + p1 * c1
            r0, r1 = ui[col], ui[q]
            ui[col] = [p1 * e0 + p2 * e1 for e0, e1 in zip(r0, r1)]
            ui[q] = [-w * e0 + s * e1 for e0, e1 in zip(r0, r1)]
        if row[col] < 0:
            for mat in (a, u):
                for k in range(len(mat)):
                    mat[k][col] = -mat[k][col]
            ui[col] = [-e for e in ui[col]]
        if row[col] != 0:
            col += 1
    return UnimodularReduction(
        transformed=tuple(map(tuple, a)),
        U=tuple(map(tuple, u)),
        U_inverse=tuple(map(tuple, ui)),
    )


def minors_lcm(A: Sequence[Sequence[int]]) -> int:
    """lcm of |det| over all nonsingular maximal (n x n) row-submatrices of ``A``."""
    A = as_matrix(A)
    n = len(A[0])
    if rank(A) < n:
        raise RankDeficientError(f"matrix has rank < {n}")
    dets = (abs(det([A[i] for i in rows])) for rows in combinations(range(len(A)), n))
    return reduce(math.lcm, (d for d in dets if d), 1)
