import random

import pytest
from hypothesis import given, strategies as st

from e6weyl.cyclotomic import I, ONE, ZERO, CycloScalar, scalar
from e6weyl.exactlin import Matrix, eigenspace, vadd, vscale, vsub
from e6weyl.liealg import (
    AUT_TYPES, StructuredAlgebra, UnclassifiableError, classify, classify_by,
    fixed_subspace, order_of,
)
from e6weyl.models import PRIMARY_MODELS, build_model
from e6weyl import composition as comp
from e6weyl import jordan as jor


def random_vector(dim, rng, terms=4):
    return {rng.randrange(dim): CycloScalar.rational(rng.randint(-3, 3) or 1) for _ in range(terms)}


def test_aut_table_injective_per_order():
    for order in (2, 3):
        labels = [c for (o, _), c in AUT_TYPES.items() if o == order]
        assert len(labels) == len(set(labels))


def test_bracket_self_is_zero(tits_model):
    A = tits_model.algebra
    x = random_vector(78, random.Random(1))
    assert A.bracket(x, x) == {}


def test_tits_bracket_rule(tits_model):
    # [a (x) x, b (x) y] = t_J(xy) d_{a,b} + [a,b] (x) (x*y) + 2 t_C(ab) D_{x,y}
    M = tits_model
    C, J = M.ingredients["C"], M.ingredients["J"]
    C0, J0 = M.ingredients["C0"], M.ingredients["J0"]
    derC, derJ = M.ingredients["derC"], M.ingredients["derJ"]
    A = M.algebra
    nd, nx = derC.dim, J0.dim
    off_D = nd + C0.dim * nx
    a, b = C.vec("u1"), C.vec("v1")
    x = J0.vectors[J0.labels.index(jor.mat3_jordan().labels[3])]
    y = J0.vectors[J0.labels.index(jor.mat3_jordan().labels[4])]

    def tens(av, xv):
        return {nd + i * nx + j: p * q for i, p in C0.coordinates(av).items() for j, q in J0.coordinates(xv).items()}

    lhs = A.bracket(tens(a, x), tens(b, y))
    xy = J.mul(x, y)
    expected = {}
    for k, v in derC.coordinates(comp.flatten(comp.d_ab(C, a, b))).items():
        expected[k] = expected.get(k, ZERO) + J.t(xy) * v
    comm = vsub(C.mul(a, b), C.mul(b, a))
    if comm:
        expected = vadd(expected, tens(comm, J.star(x, y)))
    tc = C.trace(C.mul(a, b)) * 2
    dxy = {off_D + k: v for k, v in derJ.coordinates(comp.flatten(jor.D_xy(J, x, y))).items()}
    expected = vadd(expected, vscale(dxy, tc))
    assert lhs == {k: v for k, v in expected.items() if v}
    assert lhs  # the pair is chosen so the bracket is nonzero


def test_five_grading_L2_brackets_vanish(five_model):
    A = five_model.algebra
    assert A.bracket({76: ONE}, {76: ONE}) == {}
    # L1 with L2 lands in degree 3, which is empty
    assert all(not A.bracket({36 + t: ONE}, {76: ONE}) for t in range(20))


@pytest.mark.parametrize("name", PRIMARY_MODELS)
def test_jacobi(name):
    A = build_model(name).algebra
    assert A.is_antisymmetric()
    rep = A.check_jacobi(jobs=2)
    assert rep.ok and rep.triples == 76076


def test_jacobi_detects_perturbation(tits_model):
    A = tits_model.algebra
    table = dict(A.table)
    (i, j), v = next((k, v) for k, v in table.items() if k[0] < k[1])
    k0 = next(iter(v))
    bumped = dict(v)
    bumped[k0] = bumped[k0] + ONE
    table[(i, j)] = bumped
    table[(j, i)] = {k: -x for k, x in bumped.items()}
    rep = StructuredAlgebra(A.labels, table).check_jacobi()
    assert not rep.ok
    assert rep.witness is not None and rep.residual


def test_identity_is_automorphism(tits_model):
    assert tits_model.algebra.check_automorphism(Matrix.identity(78))[0]


def test_theta(five_model):
    theta = five_model.aut("theta")
    assert five_model.algebra.check_automorphism(theta)[0]
    assert fixed_subspace(theta).dim == 36
    assert order_of(theta) == 2


def test_psi0_order_four(elduque_model):
    psi0 = elduque_model.aut("Psi", i=0)
    assert elduque_model.algebra.check_automorphism(psi0)[0]
    assert order_of(psi0) == 4


def test_rho_fixes_f4(elduque_model):
    rho = elduque_model.aut("rho")
    assert order_of(rho) == 2
    assert fixed_subspace(rho).dim == 52
    assert classify(rho) == "2C"


def test_ad_is_derivation_and_grading_eigenvalues(elduque_model):
    A = elduque_model.algebra
    u = elduque_model.ingredients["unit_iota"]
    ad = A.ad(u)
    assert A.check_derivation(ad)[0]
    # eigenvalues of ad lie in i Z; the normalized derivation -i ad has {-2..2}
    d = ad.scale(-I)
    dims = [eigenspace(d, scalar(k)).dim for k in (2, 1, 0, -1, -2)]
    assert dims == [8, 16, 30, 16, 8]


def test_non_derivation_rejected(tits_model):
    rng = random.Random(5)
    M = Matrix([random_vector(78, rng) for _ in range(78)], 78)
    assert not tits_model.algebra.check_derivation(M)[0]


@pytest.mark.parametrize("name", PRIMARY_MODELS)
def test_ad_is_derivation(name):
    A = build_model(name).algebra
    rng = random.Random(hash(name) % 1000)
    for _ in range(20):
        assert A.check_derivation(A.ad(random_vector(78, rng)))[0]


def test_fixed_and_order_identity():
    f = Matrix.identity(6)
    assert fixed_subspace(f).dim == 6
    assert order_of(f) == 1


def test_order_bound():
    with pytest.raises(ValueError):
        order_of(Matrix.diagonal([ONE, scalar(2)]), bound=10)


def test_classify_table():
    assert classify_by(2, 52) == "2C"
    assert classify_by(3, 30) == "3D"
    with pytest.raises(UnclassifiableError):
        classify_by(2, 37)


def test_classify_refuses_order_four(elduque_model):
    with pytest.raises(UnclassifiableError):
        classify(elduque_model.aut("Psi", i=0), bound=4)


def test_dump_round_trip(adams_model):
    A = adams_model.algebra
    text = A.dump()
    B = StructuredAlgebra.load(text)
    assert B.labels == A.labels and B.table == A.table
    assert B.dump() == text


@given(st.integers(0, 77), st.integers(0, 77))
def test_antisymmetry_pairs(i, j):
    A = build_model("five-grading").algebra
    x, y = {i: ONE}, {j: ONE}
    assert A.bracket(x, y) == {k: -v for k, v in A.bracket(y, x).items()}
