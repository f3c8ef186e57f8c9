import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors as sympy_factors

from hopfcat.snf import identity, int_matrix, invariant_factors, smith_normal_form


def _check(M):
    A = int_matrix(M)
    sf = smith_normal_form(A)
    m, n = A.shape
    assert (sf.U.dot(A).dot(sf.V) == sf.matrix((m, n))).all()
    assert (sf.U.dot(sf.U_inv) == identity(m)).all()
    assert (sf.V.dot(sf.V_inv) == identity(n)).all()
    d = sf.diagonal
    assert all(x > 0 for x in d)
    assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1))
    return sf


@pytest.mark.parametrize("M,factors", [
    ([[2, 0], [0, 3]], [1, 6]),
    ([[0, 0], [0, 0]], []),
    ([[1, 0], [0, 0]], [1]),
    ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], [2, 6, 12]),
])
def test_examples(M, factors):
    assert _check(M).diagonal == factors
    assert invariant_factors(int_matrix(M)) == factors


def test_empty_matrix():
    sf = smith_normal_form(np.zeros((0, 3), dtype=object))
    assert sf.diagonal == [] and sf.V.shape == (3, 3)


def test_large_entries_stay_exact():
    big = 10**30
    sf = _check([[big, 0], [0, big + 1]])
    assert sf.diagonal == [1, big * (big + 1)]


matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_against_sympy(M):
    sf = _check(M)
    oracle = [abs(int(x)) for x in sympy_factors(Matrix(M), domain=ZZ) if x != 0]
    assert sf.diagonal == oracle
