import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from multiehrhart.errors import DegenerateRowError, InvalidArgumentError, RankDeficientError, SingularMatrixError
from multiehrhart.exact import (
    ceil_div,
    column_reduce,
    det,
    floor_div,
    identity,
    matmul,
    minors_lcm,
    rank,
    solve_least_free,
    solve_square,
)

small = st.integers(-6, 6)


def int_matrix(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@pytest.mark.parametrize("t,a,q", [(7, 3, 2), (-5, 3, -2), (6, 3, 2), (-6, 3, -2), (0, 1, 0), (-1, 50, -1)])
def test_floor_div_examples(t, a, q):
    assert floor_div(t, a) == q


def test_floor_identity_instance():
    assert floor_div(5 - 1, 3) == 1
    assert -floor_div(-5, 3) - 1 == 1


@pytest.mark.parametrize("a", [0, -3])
def test_floor_div_rejects_nonpositive(a):
    with pytest.raises(InvalidArgumentError):
        floor_div(4, a)


def test_floor_identity_scan():
    bad = [(t, a) for a in range(1, 51) for t in range(-1000, 1001)
           if floor_div(t - 1, a) != -floor_div(-t, a) - 1]
    assert bad == []


@given(st.integers(-10**30, 10**30), st.integers(1, 10**6))
def test_floor_ceil_bracket(t, a):
    q, c = floor_div(t, a), ceil_div(t, a)
    assert q * a <= t < (q + 1) * a
    assert c - q == (t % a != 0)


def test_solve_square_examples():
    assert solve_square(identity(2), [3, Fraction(-1, 2)]) == (3, Fraction(-1, 2))
    assert solve_square([[1, 1], [1, -1]], [1, 0]) == (Fraction(1, 2), Fraction(1, 2))
    with pytest.raises(SingularMatrixError):
        solve_square([[1, 2], [2, 4]], [1, 1])


@given(int_matrix(3, 3), st.lists(small, min_size=3, max_size=3))
def test_solve_square_matches_cramer(M, rhs):
    expect = oracles.cramer(M, rhs)
    if expect is None:
        with pytest.raises(SingularMatrixError):
            solve_square(M, rhs)
    else:
        assert solve_square(M, rhs) == expect


@given(int_matrix(4, 4))
def test_det_matches_expansion(M):
    assert det(M) == oracles.det(M)


def test_rank():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 0], [0, 1], [1, 1]]) == 2
    assert rank([[0, 0]]) == 0


def test_solve_least_free():
    assert solve_least_free([[1, 1], [2, 2]], [2, 4]) == (2, 0)
    assert solve_least_free([[1, 1], [1, 1]], [1, 2]) is None


def test_column_reduce_examples():
    r = column_reduce([[2, 0], [1, 1]])
    assert r.transformed[0] == (2, 0)
    assert r.U == identity(2)
    r = column_reduce([[2, 3], [0, 1]])
    assert r.transformed[0] == (1, 0)
    with pytest.raises(DegenerateRowError):
        column_reduce([[0, 0], [1, 1]])


@given(int_matrix(3, 3).filter(lambda M: any(M[0])), st.booleans())
def test_column_reduce_invariants(A, full):
    r = column_reduce(A, full=full)
    n = len(A[0])
    assert matmul(A, r.U) == r.transformed
    assert matmul(r.U, r.U_inverse) == identity(n)
    assert abs(oracles.det(r.U)) == 1
    g = r.transformed[0][0]
    assert g > 0 and all(v == 0 for v in r.transformed[0][1:])
    assert g == math.gcd(*A[0])
    if full and oracles.det(A) != 0:
        assert all(r.transformed[i][j] == 0 for i in range(n) for j in range(i + 1, n))


def _boxed(A, t, R):
    n = len(A[0])
    rows = [list(r) for r in A]
    for k in range(n):
        for s in (1, -1):
            e = [0] * n
            e[k] = s
            rows.append(e)
    return rows, list(t) + [R] * (2 * n)


def test_lattice_preservation_example():
    rows, t = _boxed([[2, 3], [0, 1]], (6, 2), 3)
    AU = matmul(rows, column_reduce(rows).U)
    assert oracles.scan(rows, t) == oracles.scan(AU, t)


@settings(max_examples=40, deadline=None)
@given(int_matrix(2, 2).filter(lambda M: any(M[0])), st.lists(st.integers(-4, 4), min_size=2, max_size=2))
def test_lattice_preservation(A, t):
    rows, tt = _boxed(A, t, 3)
    if not oracles.vertices(rows, tt):
        return
    AU = matmul(rows, column_reduce(rows).U)
    assert oracles.scan(rows, tt) == oracles.scan(AU, tt)


def test_minors_lcm_examples():
    assert minors_lcm([[-1, 0], [0, -1], [1, 1]]) == 1
    assert minors_lcm([[-1, 0], [0, -1], [1, 2]]) == 2
    assert minors_lcm([[1, 0], [0, 1]]) == 1
    with pytest.raises(RankDeficientError):
        minors_lcm([[1, 2], [2, 4]])


fractions = st.fractions(max_denominator=10**6).filter(lambda f: abs(f.numerator) < 10**12)


@given(fractions, fractions)
def test_fraction_exactness(x, y):
    assert (x + y) - y == x
    assert x.denominator > 0
