from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from e6weyl.cyclotomic import OMEGA, ONE, ZERO, CycloScalar, default_primes
from e6weyl.exactlin import (
    EXACT, Matrix, ModularField, Subspace, eigenspace, full_space, kernel, make_field,
    rank, rref, solve, zero_subspace,
)


def small_matrix(n, m):
    entry = st.integers(-3, 3).map(CycloScalar.rational)
    return st.lists(st.lists(entry, min_size=m, max_size=m), min_size=n, max_size=n).map(Matrix.from_dense)


def test_rref_identity():
    M = Matrix.identity(3)
    R, r = rref(M)
    assert r == 3 and R == M


def test_rref_zero():
    M = Matrix.from_dense([[ZERO] * 3] * 3)
    R, r = rref(M)
    assert r == 0 and all(not row for row in R.rows)


def test_rank_one_cyclotomic():
    assert rank(Matrix.from_dense([[ONE, OMEGA], [OMEGA * OMEGA, ONE]])) == 1


def test_kernel_of_identity_and_zero():
    assert kernel(Matrix.identity(4)).dim == 0
    assert kernel(Matrix.from_dense([[ZERO] * 4] * 4)).dim == 4


def test_eigenspace_diagonal():
    M = Matrix.diagonal([ONE, -ONE])
    E = eigenspace(M, -1)
    assert E == Subspace(2, [{1: ONE}])


def test_subspace_equality_and_intersection():
    A = Subspace(3, [{0: ONE}])
    assert A == A
    B = Subspace(3, [{1: ONE}])
    assert (A & B).dim == 0
    assert (A + B).dim == 2
    assert zero_subspace(3).issubspace(A)
    assert A.issubspace(full_space(3))


def test_ambient_mismatch():
    with pytest.raises(ValueError):
        Subspace(2, [{0: ONE}]) & Subspace(3, [{0: ONE}])


def test_make_field():
    assert make_field("exact") is EXACT
    F = make_field("modular", default_primes(1)[0])
    assert isinstance(F, ModularField)
    with pytest.raises(ValueError):
        make_field("floating")


@given(small_matrix(4, 4))
def test_rank_nullity(M):
    assert rank(M) + kernel(M).dim == 4


@given(small_matrix(3, 3))
def test_inverse(M):
    if rank(M) == 3:
        assert (M @ M.inverse()).is_identity()


@given(small_matrix(3, 4), small_matrix(4, 2))
def test_kernel_vectors_are_killed(M, _):
    for v in kernel(M).basis:
        assert not M.apply(v)


@given(small_matrix(3, 3), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_solve_consistent_systems(M, x):
    x = {i: CycloScalar.rational(c) for i, c in enumerate(x) if c}
    b = M.apply(x)
    y = solve(M, b)
    assert y is not None and M.apply(y) == b


@given(small_matrix(4, 4))
def test_modular_rank_matches_exact(M):
    F = ModularField(default_primes(1)[0])
    assert rank(M.to_field(F)) == rank(M)


@given(small_matrix(3, 3), small_matrix(3, 3))
def test_intersection_inside_both(M, N):
    A = Subspace(3, M.rows)
    B = Subspace(3, N.rows)
    C = A & B
    assert C.issubspace(A) and C.issubspace(B)
    assert A.dim + B.dim == (A + B).dim + C.dim
