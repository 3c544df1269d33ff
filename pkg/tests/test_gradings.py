import pytest
from hypothesis import given, strategies as st

from e6weyl.cyclotomic import ZETA, default_primes
from e6weyl.exactlin import Matrix, make_field
from e6weyl.gradings import (
    EXPECTED_TYPES, LIFT_BOUND, REALIZATIONS, GroupSignature, build_gamma, degree_table_failure,
    gamma3_degree_table, grading_type, iota_degree, lattice_index, simultaneous_decomposition,
)
from e6weyl.liealg import VerificationError, fixed_subspace


@pytest.mark.parametrize("gid, realization", [(g, r) for g, rs in REALIZATIONS.items() for r in rs])
def test_types(gid, realization):
    gr = build_gamma(gid, realization=realization)
    assert grading_type(gr) == EXPECTED_TYPES[gid]
    assert sum(gr.dims().values()) == 78
    assert gr.check_spanning()
    assert gr.check_compatibility()


@pytest.mark.parametrize("gid", range(1, 7))
def test_support_generates(gid):
    assert build_gamma(gid).support_generates()


def test_a1a5_support_is_index_three():
    # the s' torus parametrization reaches an index-3 sublattice of the free part
    gr = build_gamma(1, realization="a1a5")
    assert not gr.support_generates()
    a = gr.signature.ntorsion
    rows = [list(g[a:]) for g in gr.support]
    assert lattice_index(rows, gr.signature.free_rank) == 3


@pytest.mark.parametrize("gid", range(1, 7))
def test_weight_lift_margin(gid):
    gr = build_gamma(gid)
    a = gr.signature.ntorsion
    assert max(abs(x) for g in gr.support for x in g[a:]) <= LIFT_BOUND


def test_theta_decomposition(five_model):
    gr = simultaneous_decomposition(five_model.algebra, [(five_model.aut("theta"), 2)])
    assert sorted(gr.dims().values()) == [36, 42]


def test_empty_generators(adams_model):
    gr = simultaneous_decomposition(adams_model.algebra)
    assert list(gr.dims().values()) == [78]


def test_elduque_z_grading(elduque_model):
    gr = simultaneous_decomposition(elduque_model.algebra, [], [elduque_model.aut("t", alpha=ZETA)])
    assert {g[0]: d for g, d in gr.dims().items()} == {-2: 8, -1: 16, 0: 30, 1: 16, 2: 8}


def test_non_commuting_generators_rejected(five_model):
    M = five_model
    with pytest.raises(VerificationError):
        simultaneous_decomposition(M.algebra, [(M.aut("theta"), 2), (M.aut("p", sigma="(1,2)"), 2)], [M.aut("T1", alpha=ZETA)])


def test_gamma3_degree_table(elduque_model):
    table = gamma3_degree_table(elduque_model)
    assert iota_degree(0, "u1") == (0, 1, 1, 0)
    deg = {next(iter(v)): g for v, g in table.elements}
    for k in elduque_model.blocks["tri_S'"]:
        assert deg[k] == (0, 0, 0, 0)
    assert degree_table_failure(elduque_model.algebra, table) is None


def test_gamma2_coarsens_to_z2_4():
    gr = build_gamma(2)
    sig = GroupSignature((2, 2, 2, 2), 0)
    coarse = gr.coarsen(lambda g: g[:4], sig)
    assert coarse.check_compatibility()
    M = gr.model
    direct = simultaneous_decomposition(M.algebra, [(M.aut("rho"), 2)] + [(M.aut("F", k=k), 2) for k in (1, 2, 3)])
    assert coarse.components == direct.components


def test_gamma3_restricts_to_cartan_grading_of_f4():
    gr = build_gamma(3)
    free = gr.coarsen(lambda g: g[1:], GroupSignature((), 4))
    assert free.check_compatibility()
    fix = fixed_subspace(gr.model.aut("rho"))
    dims = free.restricted_to(fix)
    zero = (0, 0, 0, 0)
    assert dims[zero] == 4
    others = [d for g, d in dims.items() if g != zero]
    assert len(others) == 48 and set(others) == {1}


@pytest.mark.parametrize("gid", range(1, 7))
def test_modular_types(gid):
    F = make_field("modular", default_primes(1)[0])
    assert build_gamma(gid, F).type() == EXPECTED_TYPES[gid]


def test_json_export_is_deterministic():
    gr = build_gamma(4)
    assert gr.dumps(with_basis=False) == gr.dumps(with_basis=False)
    assert gr.to_json(with_basis=False)["type"] == [60, 9]


@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=2, max_size=6))
def test_lattice_index_matches_determinant(rows):
    import numpy as np
    from itertools import combinations
    from math import gcd
    g = 0
    for r, s in combinations(rows, 2):
        g = gcd(g, abs(round(np.linalg.det(np.array([r, s], dtype=float)))))
    assert lattice_index(rows, 2) == g


@given(st.integers(0, 5), st.integers(0, 5))
def test_signature_arithmetic(a, b):
    sig = GroupSignature((3, 3), 2)
    g, h = (a, b, a - b, b), (b, a, 1, -a)
    assert sig.add(g, sig.neg(g)) == sig.zero()
    assert sig.add(g, h) == sig.add(h, g)
