import pytest

from e6weyl.cyclotomic import OMEGA, ONE, ZERO
from e6weyl.exactlin import Subspace
from e6weyl.jordan import (
    D_xy, PAULI_B, PAULI_C, albert_algebra, conjugation_automorphism, der_basis, h3,
    inner_derivation_span, j_gradings, jordan_identity_holds, mat3_jordan, mat3_mul,
    mat3_to_vector, vector_to_mat3,
)
from e6weyl.composition import para, split_octonions


@pytest.fixture(scope="module")
def albert():
    return albert_algebra()


@pytest.fixture(scope="module")
def mat3():
    return mat3_jordan()


def test_dims(albert, mat3):
    assert albert.dim == 27
    assert mat3.dim == 9


def test_h3_needs_unit():
    with pytest.raises(ValueError):
        h3(para(split_octonions()))


def test_idempotents(albert):
    E1, E2 = albert.vec("E1"), albert.vec("E2")
    assert albert.mul(E1, E1) == E1
    assert albert.mul(E1, E2) == {}


@pytest.mark.parametrize("which", ["albert", "mat3"])
def test_commutative_and_jordan(which, request):
    J = request.getfixturevalue(which)
    assert J.is_commutative()
    assert jordan_identity_holds(J)


def test_normalized_trace(albert):
    assert albert.t(albert.unit) == ONE


def test_star_closes_on_trace_zero(albert):
    J0 = albert.trace_zero_basis()
    assert len(J0) == 26
    for _, x in J0[:6]:
        for _, y in J0:
            assert albert.t(albert.star(x, y)) == ZERO


def test_mat3_matches_associative_symmetrized_product(mat3):
    for i in range(9):
        for j in range(9):
            x, y = vector_to_mat3({i: ONE}), vector_to_mat3({j: ONE})
            xy, yx = mat3_mul(x, y), mat3_mul(y, x)
            half = [[(xy[r][c] + yx[r][c]) * ONE / 2 for c in range(3)] for r in range(3)]
            assert mat3.mul({i: ONE}, {j: ONE}) == mat3_to_vector(half)


def test_D_xx_is_zero(albert):
    x = albert.vec("E1")
    assert not any(D_xy(albert, x, x).rows)


def test_D_is_derivation(albert):
    D = D_xy(albert, albert.vec("E1"), albert.vec(albert.labels[5]))
    assert albert.is_derivation(D)


def test_albert_derivations(albert):
    inner = inner_derivation_span(albert)
    assert inner.dim == 52
    assert der_basis(albert) == inner


def test_mat3_derivations(mat3):
    assert der_basis(mat3).dim == 8
    assert der_basis(mat3) == inner_derivation_span(mat3)


def test_cartan_degrees(mat3):
    g = j_gradings(mat3)["cartan"]
    assert g.check(mat3)
    deg = {next(iter(v)): d for v, d in g.elements}
    E = lambda i, j: mat3_to_vector([[ONE if (r, c) == (i, j) else ZERO for c in range(3)] for r in range(3)])
    key = lambda i, j: next(iter(E(i, j)))
    assert deg[key(0, 1)] == (1, 0)
    assert deg[key(1, 2)] == (0, 1)
    assert deg[key(0, 2)] == (1, 1)


def test_pauli_grading(mat3):
    g = j_gradings(mat3)["pauli"]
    assert g.check(mat3)
    comps = g.components(9)
    assert len(comps) == 9 and all(S.dim == 1 for S in comps.values())
    cb = mat3_mul(PAULI_C, PAULI_B)
    bc = mat3_mul(PAULI_B, PAULI_C)
    # b and c commute up to a primitive cube root: b c = w c b
    assert bc == [[OMEGA * x for x in row] for row in cb]
    assert cb != bc


def test_conjugations_give_the_pauli_components(mat3):
    hb = conjugation_automorphism(mat3, PAULI_B)
    hc = conjugation_automorphism(mat3, PAULI_C)
    assert mat3.is_automorphism(hb) and mat3.is_automorphism(hc)
    for v, (a, b) in j_gradings(mat3)["pauli"].elements:
        assert hb.apply(v) == {k: x * OMEGA ** b for k, x in v.items()} or hb.apply(v) == {k: x * OMEGA ** (-b) for k, x in v.items()}
        assert Subspace(9, [v]).contains(hc.apply(v))
