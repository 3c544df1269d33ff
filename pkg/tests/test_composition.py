import pytest
from hypothesis import given, strategies as st

from e6weyl import composition as comp
from e6weyl.composition import (
    cartan_grading, d_ab, flatten, hurwitz_small, inner_derivation_span, para,
    pseudo_octonion_z3sq_generators, pseudo_octonions, split_octonions, t_xy_vector,
    theta_shift, triality, z2cube_automorphisms, z2cube_elements, z2cube_grading,
)
from e6weyl.cyclotomic import ONE, ZERO, CycloScalar
from e6weyl.exactlin import Subspace


@pytest.fixture(scope="module")
def octonions():
    return split_octonions()


@pytest.fixture(scope="module")
def para_octonions(octonions):
    return para(octonions)


@pytest.fixture(scope="module")
def tri8(para_octonions):
    return triality(para_octonions)


def algebras():
    O = split_octonions()
    return {
        "field": hurwitz_small("field"),
        "binarion": hurwitz_small("binarion"),
        "mat2": hurwitz_small("quaternion-matrix"),
        "octonions": O,
        "para-binarion": para(hurwitz_small("binarion")),
        "para-octonions": para(O),
        "pseudo-octonions": pseudo_octonions(),
    }


@pytest.mark.parametrize("name", list(algebras()))
def test_composition_invariants(name):
    C = algebras()[name]
    assert C.gram_rank() == C.dim
    assert C.check_polarization()
    if C.is_symmetric_flavor:
        assert C.check_associative_form()
    if C.unit is not None:
        assert C.check_unit()
    if C.paraunit is not None:
        assert C.check_paraunit()


def test_octonion_norm_pairings(octonions):
    O = octonions
    v = O.vec
    assert O.polar(v("e1"), v("e2")) == ONE
    for k in (1, 2, 3):
        assert O.polar(v(f"u{k}"), v(f"v{k}")) == ONE
    assert O.polar(v("e1"), v("e1")) == ZERO
    assert O.polar(v("u1"), v("v2")) == ZERO


def test_octonion_idempotents(octonions):
    v = octonions.vec
    assert octonions.mul(v("e1"), v("e1")) == v("e1")
    assert octonions.mul(v("e2"), v("e2")) == v("e2")
    assert octonions.mul(v("e1"), v("e2")) == {}


def test_binarion_products():
    B = hurwitz_small("binarion")
    e1, e2 = B.vec("e1"), B.vec("e2")
    assert B.mul(e1, e2) == {}
    assert B.polar(e1, e2) == ONE


def test_mat2_identity_norm():
    M = hurwitz_small("quaternion-matrix")
    assert M.norm(M.unit) == ONE


def test_para_field_is_trivial():
    F = hurwitz_small("field")
    assert para(F).table == F.table


def test_para_binarion_swaps_idempotents():
    P = para(hurwitz_small("binarion"))
    e1, e2 = P.vec("e1"), P.vec("e2")
    assert P.mul(e1, e1) == e2
    assert P.mul(e2, e2) == e1


def test_unknown_small_algebra():
    with pytest.raises(ValueError):
        hurwitz_small("sedenion")


def test_pseudo_octonion_z3_generators_generate():
    P = pseudo_octonions()
    b, c = pseudo_octonion_z3sq_generators()
    words = [b, c]
    S = Subspace(8, words)
    frontier = list(words)
    while frontier:
        new = []
        for x in frontier:
            for y in (b, c):
                for z in (P.mul(x, y), P.mul(y, x)):
                    if z and not S.contains(z):
                        S = S + Subspace(8, [z])
                        new.append(z)
        frontier = new
    assert S.dim == 8


def test_d_aa_is_zero(octonions):
    a = octonions.vec("u1")
    assert not any(d_ab(octonions, a, a).rows)


def test_d_u1v1_is_derivation(octonions):
    D = d_ab(octonions, octonions.vec("u1"), octonions.vec("v1"))
    assert octonions.is_derivation(D)


def test_octonion_derivations_have_dim_14(octonions):
    assert inner_derivation_span(octonions).dim == 14
    assert octonions.derivation_space().dim == 14


def test_triality_dims(tri8):
    assert tri8.dim == 28
    assert triality(para(hurwitz_small("binarion"))).dim == 2


def test_triality_cyclic_shift(tri8):
    for v in tri8.basis:
        assert tri8.contains(theta_shift(v, 8))


def test_t_xy_spans_triality(para_octonions, tri8):
    S = para_octonions
    vecs = [t_xy_vector(S, {i: ONE}, {j: ONE}) for i in range(8) for j in range(8)]
    assert all(tri8.contains(v) for v in vecs)
    assert Subspace(tri8.ambient_dim, vecs) == tri8


def test_t_xy_first_slot_antisymmetric(para_octonions):
    S = para_octonions
    x, y = S.vec("u1"), S.vec("v2")
    s = comp.sigma_xy(S, x, y) + comp.sigma_xy(S, y, x)
    assert not any(s.rows)


def test_isotropic_t_xx_in_triality(para_octonions, tri8):
    x = para_octonions.vec("u2")
    assert para_octonions.norm(x) == ZERO
    assert tri8.contains(t_xy_vector(para_octonions, x, x))


def test_cartan_and_z2cube_gradings(octonions):
    assert cartan_grading(octonions).check(octonions)
    assert z2cube_grading(octonions).check(octonions)


def test_z2cube_elements(octonions):
    O = octonions
    ws = z2cube_elements(O)
    for w in ws:
        assert O.mul(w, w) == O.unit
    for i in range(3):
        for j in range(i + 1, 3):
            assert O.polar(ws[i], ws[j]) == ZERO


def test_z2cube_automorphisms(octonions):
    fs = z2cube_automorphisms(octonions)
    for f in fs:
        assert octonions.is_automorphism(f)
        assert (f @ f).is_identity()
    assert fs[0] @ fs[1] == fs[1] @ fs[0]


@pytest.mark.parametrize("keep", [2, 1])
def test_z2cube_restrictions_are_gradings(octonions, keep):
    # <1, w1, w2, w1w2> and <1, w1>: degrees supported on the first `keep` coordinates
    gr = z2cube_grading(octonions)
    elems = [(v, g) for v, g in gr.elements if not any(g[keep:])]
    assert len(elems) == 2 ** keep
    span = Subspace(8, [v for v, _ in elems])
    for v, g in elems:
        for w, h in elems:
            p = octonions.mul(v, w)
            assert span.contains(p)
            target = [u for u, k in elems if k == gr.add(g, h)]
            assert Subspace(8, target).contains(p)


@given(st.tuples(*[st.integers(-2, 2)] * 8), st.tuples(*[st.integers(-2, 2)] * 8))
def test_octonion_norm_is_multiplicative(a, b):
    O = split_octonions()
    x = {i: CycloScalar.rational(c) for i, c in enumerate(a) if c}
    y = {i: CycloScalar.rational(c) for i, c in enumerate(b) if c}
    assert O.norm(O.mul(x, y)) == O.norm(x) * O.norm(y)


@given(st.tuples(*[st.integers(-2, 2)] * 8), st.tuples(*[st.integers(-2, 2)] * 8), st.tuples(*[st.integers(-2, 2)] * 8))
def test_pseudo_octonion_form_is_associative(a, b, c):
    P = pseudo_octonions()
    x, y, z = ({i: CycloScalar.rational(k) for i, k in enumerate(t) if k} for t in (a, b, c))
    assert P.polar(P.mul(x, y), z) == P.polar(x, P.mul(y, z))


def test_flatten_round_trip(octonions):
    M = octonions.left_matrix(octonions.vec("u1"))
    assert comp.unflatten(flatten(M), 8) == M
