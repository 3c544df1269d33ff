import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from e6weyl.cyclotomic import scalar
from e6weyl.exactlin import Matrix
from e6weyl.gradings import GroupSignature, build_gamma
from e6weyl.liealg import VerificationError
from e6weyl.weyl import (
    DISPLAYS, F4_GENERATORS, SIGMA_D6, SIGNATURES, TAU1, TAU2, TAU_D6, GroupAutMatrix,
    check_displays, claimed_order_formula, claimed_weyl, closure, factor_groups, induced_on_group,
    kappa, kappa0, obstruction_checks, realized_generators, sp4_group, sp4_membership,
    sp8_checks, sp8_restriction_group, structural_predicates, transposition_image, verify_weyl,
)

Z2 = GroupSignature((), 2)
Z4 = GroupSignature((), 4)


def free(sig, rows):
    return GroupAutMatrix(sig, rows)


def test_tau_orders():
    t1, t2 = free(Z2, TAU1), free(Z2, TAU2)
    assert t1.order() == 3
    assert t2.order() == 2


def test_d3():
    G = closure([free(Z2, TAU1), free(Z2, TAU2)])
    assert len(G) == 6 and not G.is_abelian()


def test_d6():
    s, t = free(Z2, SIGMA_D6), free(Z2, TAU_D6)
    assert s.order() == 6 and t.order() == 2
    assert (t @ s @ t) == s.inverse()
    assert len(closure([s, t])) == 12


def test_weyl_f4():
    assert len(closure([free(Z4, g) for g in F4_GENERATORS])) == 1152


def test_sp4_enumeration():
    assert len(sp4_group()) == 720
    assert sp4_membership([[int(i == j) for j in range(4)] for i in range(4)])


def test_transpositions_generate_sp4():
    sig = GroupSignature((2, 2, 2, 2), 0)
    gens = [GroupAutMatrix(sig, transposition_image(i, j)) for i, j in itertools.combinations(range(1, 7), 2)]
    assert all(sp4_membership(g.rows) for g in gens)
    G = closure(gens)
    assert len(G) == 720
    assert {g.rows for g in G.elements()} == set(sp4_group())


def test_kappa():
    assert kappa0((1, 0, 0, 0)) == 0
    assert kappa0((1, 1, 0, 0)) == 0
    assert kappa0((1, 1, 1, 0)) == 1
    assert kappa0((1, 1, 1, 1)) == 1
    assert kappa([[int(i == j) for j in range(4)] for i in range(4)]) == (0, 0, 0, 0)
    with pytest.raises(ValueError):
        kappa0((0, 0, 0, 0))


def test_lower_left_block_enforced():
    with pytest.raises(ValueError):
        GroupAutMatrix(SIGNATURES[1], [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [1, 0, 0, 1, 0], [0, 0, 0, 0, 1]])


def test_torsion_entries_reduced():
    m = GroupAutMatrix(SIGNATURES[4], [[4, 0, 5, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    assert m.rows[0] == (1, 0, 2, 0)


@st.composite
def group_elements(draw, gid):
    G = claimed_weyl(gid)
    keys = sorted(G.keys)
    k = draw(st.integers(0, len(keys) - 1))
    n = SIGNATURES[gid].rank
    flat = np.frombuffer(keys[k], dtype=np.int8).tolist()
    return GroupAutMatrix(SIGNATURES[gid], [flat[i * n:(i + 1) * n] for i in range(n)])


@pytest.mark.parametrize("gid", range(1, 7))
def test_group_axioms_on_samples(gid):
    G = claimed_weyl(gid)

    @settings(max_examples=25, deadline=None)
    @given(group_elements(gid), group_elements(gid))
    def check(x, y):
        assert (x @ y) in G
        xi = x.inverse()
        assert xi in G and (x @ xi).is_identity()

    check()


@pytest.mark.parametrize("gid, order", [(1, 64512), (2, 5376), (3, 4608), (4, 5184), (5, 46080), (6, 3072)])
def test_claimed_orders(gid, order):
    assert claimed_order_formula(gid)[0] == order
    assert len(claimed_weyl(gid)) == order


def test_factor_orders():
    F = {k: len(v) for k, v in factor_groups().items()}
    assert F == {"GL3(Z2)": 168, "GL2(Z3)": 48, "GL2(Z2)": 6, "D3": 6, "D6": 12, "W(F4)": 1152, "signed-perm2": 8, "Sp4(Z2)": 720}


def test_closure_cap_and_bound():
    with pytest.raises(VerificationError):
        closure([free(Z4, g) for g in F4_GENERATORS], cap=100)
    with pytest.raises(ValueError):
        closure([])


def test_induced_identity():
    gr = build_gamma(4)
    m = induced_on_group(Matrix.identity(78), gr)
    assert m.is_identity()


def test_induced_rejects_non_normalizer():
    gr = build_gamma(5)
    # a rotation in the (e1, e2) plane that is not of finite order mixes components
    bad = gr.model.aut("psi", a=scalar(3) / 5, ap=scalar(4) / 5)
    with pytest.raises(VerificationError):
        induced_on_group(bad, gr)


@pytest.mark.parametrize("gid", [2, 4, 6])
def test_induced_is_a_homomorphism(gid):
    gr = build_gamma(gid)
    gens = realized_generators(gid, reflections=False)[:4]
    for x, y in itertools.product(gens, repeat=2):
        lhs = induced_on_group(x.automorphism @ y.automorphism, gr)
        assert lhs == x.matrix @ y.matrix


@pytest.mark.parametrize("gid", range(1, 7))
def test_realized_generators_are_automorphisms_in_claimed_set(gid):
    gr = build_gamma(gid)
    G = claimed_weyl(gid)
    for g in realized_generators(gid):
        assert g.matrix in G, g.name
        assert g.matrix.lower_left_zero()


@pytest.mark.parametrize("d", DISPLAYS, ids=lambda d: f"G{d.gid}:{d.realization}:{d.label}")
def test_display(d):
    entry = next(e for e in check_displays(d.gid) if e["display"] == d.label and e["realization"] == d.realization)
    assert entry["computed"] == entry["expected"]


def test_phi1_tilde_inverts_the_circle_coordinate():
    # phi1 psi_{a,a'} phi1^-1 = psi_{a,-a'}: the T1' coordinate changes sign
    entry = next(e for e in check_displays(6) if e["automorphism"] == "phi1~")
    assert entry["computed"] == [[1, 0, 0, 1, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, -1, 0], [0, 0, 0, 0, 1]]
    assert GroupAutMatrix(SIGNATURES[6], entry["computed"]) in claimed_weyl(6)


def test_sp8_identities():
    for c in sp8_checks():
        assert c["ok"], c["name"]


def test_sp8_primed_reading_forced():
    rows = [c for c in sp8_checks() if "unprimed_reading_holds" in c]
    assert len(rows) == 3
    assert all(c["ok"] and not c["unprimed_reading_holds"] for c in rows)


def test_sp8_restriction_group():
    G = sp8_restriction_group()
    assert len(G) == 192
    assert G.keys <= claimed_weyl(6).keys


@pytest.mark.parametrize("gid", range(2, 7))
def test_obstructions(gid):
    checks = obstruction_checks(gid)
    assert checks
    bad = [c["name"] for c in checks if not c["ok"]]
    assert not bad


def test_obstruction_counts():
    assert len(obstruction_checks(2)) == 15
    assert len(obstruction_checks(3)) == 16
    assert len(obstruction_checks(5)) == 1 + 31


def test_structural_predicates_detect_violations():
    sig = SIGNATURES[3]
    bad = GroupAutMatrix(sig, [[1, 1, 0, 0, 0]] + [[int(i == j) for j in range(5)] for i in range(1, 5)])
    assert not structural_predicates(3, [bad])["first_row_abab"]
    sig5 = SIGNATURES[5]
    rows = [[int(i == j) for j in range(6)] for i in range(6)]
    rows[1][5] = 1
    assert not structural_predicates(5, [GroupAutMatrix(sig5, rows)])["torsion_column_is_kappa"]


@pytest.mark.parametrize("gid", range(1, 7))
def test_verify_weyl(gid):
    rep = verify_weyl(gid)
    assert rep["closure_order"] == rep["claimed_order"]
    assert rep["closure_equals_claimed"]
    assert rep["all_realized_in_claimed"]
    assert rep["generators_certified"] and all(rep["generators_certified"].values())
    assert all(rep["structural"].values())
    assert rep["checks"]["obstructions"]
