import random

import pytest

from e6weyl import composition as comp
from e6weyl.cyclotomic import I, OMEGA, ONE, ZERO, ZETA, scalar
from e6weyl.exactlin import Matrix, Subspace
from e6weyl.liealg import VerificationError, classify, fixed_subspace, order_of
from e6weyl.models import (
    FIVE_GAUGE, TRIPLES6, _gl_action_wedge, _perm_sign, build_model,
    diag6, elduque, f_ij, five_grading_skeleton, named_aut, sl_matrix, solve_jacobi_scalars,
    _sample_triples,
)


def block_dims(M):
    return {k: len(r) for k, r in M.blocks.items()}


def test_tits_octonion_blocks(tits_model):
    assert tits_model.dim == 78
    assert block_dims(tits_model) == {"der_C": 14, "C0xJ0": 56, "der_J": 8}
    # the Der(C) block matches the span of the d_{a,b}
    assert comp.inner_derivation_span(comp.split_octonions()).dim == 14


def test_tits_albert_is_z2_graded():
    M = build_model("tits-binarion-albert")
    assert block_dims(M) == {"der_C": 0, "C0xJ0": 26, "der_J": 52}
    odd = M.blocks["C0xJ0"]
    g = Matrix.diagonal([-ONE if k in odd else ONE for k in range(78)])
    assert M.algebra.check_automorphism(g)[0]
    assert fixed_subspace(g).dim == 52


def test_tits_needs_unit():
    with pytest.raises(ValueError):
        from e6weyl.models import tits
        from e6weyl.jordan import mat3_jordan
        tits(comp.para(comp.split_octonions()), mat3_jordan())


def test_octonion_automorphisms_extend(tits_model):
    for f in comp.z2cube_automorphisms(comp.split_octonions()):
        assert tits_model.algebra.check_automorphism(tits_model.aut("extend_C", phi=f))[0]
    t = comp.cartan_torus(comp.split_octonions(), ZETA, OMEGA)
    assert tits_model.algebra.check_automorphism(tits_model.aut("extend_C", phi=t))[0]


def test_elduque_blocks(elduque_model):
    dims = block_dims(elduque_model)
    assert dims["tri_S"] == 28 and dims["tri_S'"] == 2
    assert sum(dims[f"iota{i}"] for i in range(3)) == 48


def test_elduque_rejects_hurwitz():
    with pytest.raises(ValueError):
        elduque(comp.split_octonions(), comp.para(comp.hurwitz_small("binarion")))


def test_triality_automorphism(elduque_model):
    M = elduque_model
    th = M.aut("triality")
    assert M.algebra.check_automorphism(th)[0]
    assert order_of(th) == 3
    for k in (1, 2, 3):
        F = M.aut("F", k=k)
        assert th @ F == F @ th
    rho = M.aut("rho")
    assert th @ rho == rho @ th


def test_triality_with_other_shift_fails():
    M = elduque(comp.para(comp.split_octonions()), comp.para(comp.hurwitz_small("binarion")), iota_shift=2)
    assert not M.algebra.check_automorphism(M.aut("triality"))[0]


def test_rho_fixed_subalgebra(elduque_model):
    M = elduque_model
    fix = fixed_subspace(M.aut("rho"))
    S8 = M.ingredients["S"]
    iota = M.ingredients["iota"]
    one = {0: ONE, 1: ONE}  # paraunit of p(F+F), spanning F1
    vecs = [{k: ONE} for k in M.blocks["tri_S"]]
    vecs += [iota(i, {x: ONE}, one) for i in range(3) for x in range(S8.dim)]
    assert fix == Subspace(78, vecs)
    assert fix.dim == 52


def test_five_grading_blocks(five_model):
    dims = block_dims(five_model)
    assert dims == {"gl": 36, "L1": 20, "L-1": 20, "L2": 1, "L-2": 1}


def test_five_grading_scalars(five_model):
    s = five_model.scalars
    assert s["a11"] == ONE and s["am1m1"] == ONE and s["a1m1"] == ONE
    assert s["a1m2"] == -ONE and s["am12"] == -ONE
    assert s["b1"] == scalar(1) / 6 and s["b2"] == -scalar(1) / 3
    assert s["a2m2"] is None


def test_spec_gauge_leaves_a_free_scale():
    sk, blocks = five_grading_skeleton()
    with pytest.raises(VerificationError, match="not determined"):
        solve_jacobi_scalars(sk, {"a11": 1, "am1m1": 1}, _sample_triples(blocks, 60))


def test_gauge_orbit():
    # rescaling L1 by c moves along the gauge orbit; the solve follows it
    sk, blocks = five_grading_skeleton()
    gauge = dict(FIVE_GAUGE, a1m1=2)
    values = solve_jacobi_scalars(sk, gauge, _sample_triples(blocks, 60))
    assert values["b1"] == scalar(2) / 6 and values["b2"] == -scalar(4) / 3
    alg = sk.algebra({k: (v if v is not None else ONE) for k, v in values.items()})
    assert alg.check_jacobi(jobs=2).ok


def test_torus_preserves_scalars(five_model):
    f = five_model.aut("T1", alpha=ZETA)
    assert five_model.algebra.check_automorphism(f)[0]


def test_theta_commutation_rule(five_model):
    M = five_model
    theta = M.aut("theta")
    f12 = M.aut("f", i=1, j=2)
    assert theta @ f12 == f12 @ theta
    g = M.aut("tilde", phi=diag6(2, 1, 1, 1, 1, 1))
    assert M.algebra.check_automorphism(g)[0]
    assert theta @ g != g @ theta


def test_phi1_relation(five_model):
    M = five_model
    phi1 = M.aut("phi1")
    lhs = phi1 @ M.aut("theta") @ phi1.inverse()
    assert lhs == M.aut("theta") @ M.aut("f", i=1, j=2)


def test_reversal(five_model):
    rho = five_model.aut("reversal")
    assert five_model.algebra.check_automorphism(rho)[0]
    assert order_of(rho) == 4


def test_adams(adams_model):
    M = adams_model
    assert block_dims(M) == {"sl1": 8, "sl2": 8, "sl3": 8, "W": 27, "W*": 27}
    assert M.aut("Psi", f=Matrix.diagonal([OMEGA] * 3)).is_identity()
    H2 = M.aut("H2")
    assert (H2 @ H2 @ H2).is_identity() and not H2.is_identity()
    # u (x) v (x) w -> v (x) w (x) u on the basis word (0, 1, 2)
    src = 24 + 0 * 9 + 1 * 3 + 2
    dst = 24 + 1 * 9 + 2 * 3 + 0
    assert H2.apply({src: ONE}) == {dst: ONE}
    for name in ("H1", "H2"):
        assert M.algebra.check_automorphism(M.aut(name))[0]
    T = M.aut("T", alpha=ZETA, beta=OMEGA)
    assert M.algebra.check_automorphism(T)[0]


def test_a1a5_scalars(a1a5):
    assert a1a5.scalars == {"lam": ONE, "mu": -scalar(2)}


def test_a1a5_bracket_characterization(a1a5):
    # the sl(V) part of [u1 (x) x, u2 (x) y] is mu [x, y] with tr(f [x, y]) = <f x, y>
    A = a1a5.algebra
    mu = a1a5.scalars["mu"]
    rng = random.Random(3)
    for _ in range(10):
        t, s = rng.randrange(20), rng.randrange(20)
        br = A.bracket({38 + t: ONE}, {58 + s: ONE})
        xy = {}
        for k, c in br.items():
            if 3 <= k < 38:
                for rc, v in sl_matrix(k - 3, 6).items():
                    xy[rc] = xy.get(rc, ZERO) + c * v / mu
        for i in range(6):
            for j in range(6):
                if i == j:
                    continue
                lhs = xy.get((j, i), ZERO)  # tr(E_ij M) = M_ji
                rhs = ZERO
                S = TRIPLES6[s]
                for r, c in _gl_action_wedge(i, j, TRIPLES6[t], False).items():
                    R = TRIPLES6[r]
                    if not set(R) & set(S):
                        rhs = rhs + c * _perm_sign(R + S)
                assert lhs == rhs


def test_a1a5_products_are_automorphisms(a1a5):
    f1 = Matrix.from_dense([[ONE, scalar(2)], [ZERO, ONE]])
    f2 = Matrix.from_dense([[ONE if i == j else (scalar(1) if (i, j) == (0, 3) else ZERO) for j in range(6)] for i in range(6)])
    f = a1a5.aut("prod", f1=f1, f2=f2)
    assert a1a5.algebra.check_automorphism(f)[0]


def test_a1a5_f2p(a1a5):
    f = a1a5.aut("f2p")
    assert order_of(f) == 2
    assert classify(f) == "2A"


def test_a1a5_permutation_relation(a1a5):
    phi = named_aut(a1a5, "perm", check=True, sigma="(1,4)(3,6)")
    f1 = a1a5.aut("f1p")
    assert phi @ f1 @ phi.inverse() == f1 @ a1a5.aut("s", alpha=-1, beta=1)


def test_psi0_relations(elduque_model):
    M = elduque_model
    psi0 = named_aut(M, "Psi", check=True, i=0)
    for k in (1, 2, 3):
        F = M.aut("F", k=k)
        assert psi0 @ F == F @ psi0
    rho = M.aut("rho")
    assert psi0.inverse() @ rho @ psi0 == rho @ M.aut("t", alpha=-1)


def test_named_aut_unknown(adams_model):
    with pytest.raises(KeyError):
        named_aut(adams_model, "nonexistent")


def test_build_model_unknown():
    with pytest.raises(KeyError):
        build_model("g2")
