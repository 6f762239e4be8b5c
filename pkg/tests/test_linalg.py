from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from curvhom import _elim_py, linalg
from curvhom.linalg import (SparseMatrix, UWindowScalar, WindowOverflow, kernel_basis, projected_kernel_dim,
                            rank, rank_rows, rank_u_exact, rref, solve)
from conftest import dense_rank

small_int = st.integers(min_value=-4, max_value=4)


@st.composite
def matrices(draw, max_dim=7):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    return [[draw(small_int) for _ in range(c)] for _ in range(r)]


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_rank_matches_dense_oracle(rows):
    m = SparseMatrix.from_dense(rows)
    assert rank(m) == dense_rank(rows)


@given(matrices())
@settings(max_examples=80, deadline=None)
def test_backends_agree(rows):
    sparse = [{j: v for j, v in enumerate(r) if v} for r in rows]
    assert linalg._backend.rank_rows(sparse, len(rows[0])) == _elim_py.rank_rows([dict(r) for r in sparse], len(rows[0]))


def test_compiled_kernel_survives_overflow():
    big = 2 ** 62
    rows = [{0: big, 1: big - 1}, {0: big - 3, 1: big + 5}, {0: 1, 1: 1}]
    assert rank_rows(rows, 2) == 2
    assert rank_rows([{0: big, 1: 2 * big}, {0: 1, 1: 2}], 2) == 1


def test_rational_entries():
    m = SparseMatrix.from_dense([[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), 1]])
    assert rank(m) == 1


def test_kernel_and_solve():
    m = SparseMatrix.from_dense([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    ker = kernel_basis(m)
    assert len(ker) == 1
    assert not m.apply(ker[0])
    x = solve(m, {0: 6, 1: 12, 2: 2})
    assert m.apply(x) == {0: 6, 1: 12, 2: 2}
    assert solve(m, {0: 1, 1: 0, 2: 0}) is None
    rows, pivots = rref(m)
    assert pivots == [0, 1]


def test_projected_kernel_dim():
    # ker A = span(e2) ; projecting away column 2 leaves nothing
    rows = [{0: 1}, {1: 1}]
    assert projected_kernel_dim(rows, 3, [2]) == 0
    assert projected_kernel_dim(rows, 3, []) == 1
    # ker A = span(e0 - e1), which survives dropping column 2
    assert projected_kernel_dim([{0: 1, 1: 1}], 3, [2]) == 1


def test_u_rank_sampled_matches_exact():
    u = UWindowScalar.u(1, window=4)
    m = SparseMatrix(2, 2, [(0, 0, u), (0, 1, 1), (1, 0, u * u), (1, 1, u)])
    assert rank(m) == rank_u_exact(m) == 1
    m2 = SparseMatrix(2, 2, [(0, 0, u), (0, 1, 1), (1, 0, 1), (1, 1, u)])
    assert rank(m2) == rank_u_exact(m2) == 2


def test_u_window_overflow():
    u = UWindowScalar.u(1, window=2)
    assert (u * u).evaluate(Fraction(2)) == 4
    with pytest.raises(WindowOverflow):
        u * u * u


def test_matrix_algebra():
    a = SparseMatrix.from_dense([[1, 2], [0, 1]])
    assert (a @ SparseMatrix.identity(2)) == a
    assert (a - a).nnz() == 0
    assert a.transpose().to_dense() == [[1, 0], [2, 1]]
