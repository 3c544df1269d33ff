"""The five models of e6 used here, with their named automorphisms.

Basis orderings are fixed by the builders below and are part of the
interface: induced group matrices and dumps depend on them.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Callable

from . import composition as comp
from . import jordan as jor
from .cyclotomic import I, ONE, ZERO, CycloScalar, scalar
from .exactlin import EXACT, EigenFrame, IndexedBasis, eigenspace, Matrix, Vector, lincomb, vadd, vscale, vsub
from .liealg import StructuredAlgebra, VerificationError

HALF = CycloScalar.rational(Fraction(1, 2))


@dataclass
class ModelHandle:
    name: str
    algebra: StructuredAlgebra
    blocks: dict  # block name -> range of basis indices
    ingredients: dict = dc_field(default_factory=dict)
    automorphisms: dict = dc_field(default_factory=dict)  # name -> callable(**params) -> Matrix
    scalars: dict = dc_field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def aut(self, name: str, **params) -> Matrix:
        try:
            maker = self.automorphisms[name]
        except KeyError:
            raise KeyError(f"model {self.name} has no automorphism named {name!r}") from None
        return maker(**params)


def named_aut(model: ModelHandle, name: str, check: bool = False, **params) -> Matrix:
    """Look up a registered automorphism; optionally certify it."""
    f = model.aut(name, **params)
    if check:
        ok, wit = model.algebra.check_automorphism(f)
        if not ok:
            raise VerificationError(f"{name} is not an automorphism of {model.name}", wit)
    return f


def _matrix_coords(basis: IndexedBasis, M: Matrix) -> Vector:
    return basis.coordinates(comp.flatten(M))


def _conjugate(phi: Matrix, phi_inv: Matrix, M: Matrix) -> Matrix:
    return phi @ M @ phi_inv


# ---------------------------------------------------------------- Tits construction

def _derivation_basis(alg, candidates) -> tuple[IndexedBasis, list[Matrix]]:
    n = alg.dim
    B = IndexedBasis(n * n)
    mats = []
    for label, M in candidates:
        if B.offer(comp.flatten(M), label):
            mats.append(M)
    return B, mats


def tits(C: comp.CompositionAlgebra, J: jor.JordanAlgebra, trace_scale=ONE) -> ModelHandle:
    """Der(C) + C0 (x) J0 + Der(J).

    ``trace_scale`` fixes t_C(x) = trace_scale * n(x, 1).  The default is the
    Hurwitz trace t(x) = n(x, 1); the normalized trace (scale 1/2) fails Jacobi.
    """
    if C.unit is None:
        raise ValueError("Tits construction needs a Hurwitz algebra")
    c0 = C.trace_zero_basis()
    c0_labels = [_vec_label(C, v) for v in c0]
    j0 = J.trace_zero_basis()
    nC, nJ = C.dim, J.dim

    dc_cands = []
    for (i, a), (j, b) in combinations(list(enumerate(c0)), 2):
        dc_cands.append((f"d({c0_labels[i]},{c0_labels[j]})", comp.d_ab(C, a, b)))
    derC, derC_mats = _derivation_basis(C, dc_cands)
    dj_cands = []
    for (i, (la, x)), (j, (lb, y)) in combinations(list(enumerate(j0)), 2):
        dj_cands.append((f"D({la},{lb})", jor.D_xy(J, x, y)))
    derJ, derJ_mats = _derivation_basis(J, dj_cands)
    if derC.dim != C.derivation_space().dim or derJ.dim != J.derivation_space().dim:
        raise VerificationError("inner derivations do not span the derivation algebra")

    C0 = IndexedBasis(nC)
    for v, lab in zip(c0, c0_labels):
        C0.offer(v, lab)
    J0 = IndexedBasis(nJ)
    for lab, v in j0:
        J0.offer(v, lab)

    nd, na, nx, nD = derC.dim, C0.dim, J0.dim, derJ.dim
    off_t = nd
    off_D = nd + na * nx
    dim = off_D + nD
    labels = list(derC.labels) + [f"{C0.labels[a]}⊗{J0.labels[x]}" for a in range(na) for x in range(nx)] + list(derJ.labels)

    def tens(avec: Vector, xvec: Vector) -> Vector:
        ca, cx = C0.coordinates(avec), J0.coordinates(xvec)
        return {off_t + a * nx + x: p * q for a, p in ca.items() for x, q in cx.items()}

    def from_derC(M):
        return {k: v for k, v in _matrix_coords(derC, M).items()}

    def from_derJ(M):
        return {off_D + k: v for k, v in _matrix_coords(derJ, M).items()}

    upper: dict = {}
    # Der(C) and Der(J) brackets
    for i in range(nd):
        for j in range(i + 1, nd):
            upper[(i, j)] = from_derC(comp.commutator(derC_mats[i], derC_mats[j]))
    for i in range(nD):
        for j in range(i + 1, nD):
            upper[(off_D + i, off_D + j)] = from_derJ(comp.commutator(derJ_mats[i], derJ_mats[j]))
    # derivations acting on C0 (x) J0
    for i, d in enumerate(derC_mats):
        for a in range(na):
            da = d.apply(C0.vectors[a])
            for x in range(nx):
                upper[(i, off_t + a * nx + x)] = tens(da, J0.vectors[x]) if da else {}
    for i, D in enumerate(derJ_mats):
        for x in range(nx):
            Dx = D.apply(J0.vectors[x])
            for a in range(na):
                upper[(off_D + i, off_t + a * nx + x)] = tens(C0.vectors[a], Dx) if Dx else {}
    # [a (x) x, b (x) y]
    tC = lambda v: C.trace(v) * trace_scale
    for p in range(na * nx):
        a, x = divmod(p, nx)
        for q in range(p + 1, na * nx):
            b, y = divmod(q, nx)
            av, bv, xv, yv = C0.vectors[a], C0.vectors[b], J0.vectors[x], J0.vectors[y]
            xy = J.mul(xv, yv)
            ab, ba = C.mul(av, bv), C.mul(bv, av)
            terms = []
            tj = J.t(xy)
            if tj:
                terms.append((tj, from_derC(comp.d_ab(C, av, bv))))
            comm = vsub(ab, ba)
            if comm:
                st = J.star(xv, yv)
                if st:
                    terms.append((ONE, tens(comm, st)))
            tc = tC(ab) * 2
            if tc:
                terms.append((tc, from_derJ(jor.D_xy(J, xv, yv))))
            upper[(off_t + p, off_t + q)] = lincomb(terms)

    alg = StructuredAlgebra.from_upper(labels, upper)
    blocks = {"der_C": range(0, nd), "C0xJ0": range(off_t, off_D), "der_J": range(off_D, dim)}
    model = ModelHandle(f"tits({C.name},H3({J.C.name}))", alg, blocks, {"C": C, "J": J, "C0": C0, "J0": J0, "derC": derC, "derJ": derJ, "derC_mats": derC_mats, "derJ_mats": derJ_mats})

    def extend_c(phi: Matrix) -> Matrix:
        phi_inv = phi.inverse()
        cols = [from_derC(_conjugate(phi, phi_inv, d)) for d in derC_mats]
        for a in range(na):
            pa = phi.apply(C0.vectors[a])
            for x in range(nx):
                cols.append(tens(pa, J0.vectors[x]))
        cols += [{off_D + i: ONE} for i in range(nD)]
        return Matrix.from_columns(cols, dim)

    def extend_j(psi: Matrix) -> Matrix:
        psi_inv = psi.inverse()
        cols = [{i: ONE} for i in range(nd)]
        for a in range(na):
            for x in range(nx):
                cols.append(tens(C0.vectors[a], psi.apply(J0.vectors[x])))
        cols += [from_derJ(_conjugate(psi, psi_inv, D)) for D in derJ_mats]
        return Matrix.from_columns(cols, dim)

    model.automorphisms["extend_C"] = lambda phi: extend_c(phi)
    model.automorphisms["extend_J"] = lambda psi: extend_j(psi)
    return model


def _vec_label(C, v: Vector) -> str:
    parts = []
    for k in sorted(v):
        x = v[k]
        lab = C.labels[k]
        if x == ONE:
            parts.append(("+" if parts else "") + lab)
        elif x == -ONE:
            parts.append("-" + lab)
        else:
            parts.append(("+" if parts else "") + f"({x.to_text()}){lab}")
    return "".join(parts)


# ---------------------------------------------------------------- symmetric construction

def _tri_basis(S: comp.CompositionAlgebra, prefix: str) -> IndexedBasis:
    n = S.dim
    B = IndexedBasis(3 * n * n)
    for i in range(n):
        for j in range(i, n):
            B.offer(comp.t_xy_vector(S, {i: ONE}, {j: ONE}), f"{prefix}({S.labels[i]},{S.labels[j]})")
    full = comp.triality(S)
    for k, v in enumerate(full.basis):
        B.offer(v, f"{prefix}[{k}]")
    if B.dim != full.dim:
        raise VerificationError("triality basis construction failed")
    return B


def _tri_bracket(u: Vector, v: Vector, n: int) -> Vector:
    a = comp.triple_maps(u, n)
    b = comp.triple_maps(v, n)
    return comp.triple_vector(*(comp.commutator(x, y) for x, y in zip(a, b)))


def _tri_conjugate(v: Vector, n: int, f: Matrix, f_inv: Matrix) -> Vector:
    return comp.triple_vector(*(f @ d @ f_inv for d in comp.triple_maps(v, n)))


def elduque(S: comp.CompositionAlgebra, Sp: comp.CompositionAlgebra, iota_shift: int = 1) -> ModelHandle:
    """tri(S) + tri(S') + iota_0(S (x) S') + iota_1(S (x) S') + iota_2(S (x) S').

    ``iota_shift`` is the image index step of the triality extension on the
    iota blocks (iota_i -> iota_{i+shift}); it is validated by check_automorphism.
    """
    if not (S.is_symmetric_flavor and Sp.is_symmetric_flavor):
        raise ValueError("symmetric composition algebras required")
    n, m = S.dim, Sp.dim
    T = _tri_basis(S, "t")
    Tp = _tri_basis(Sp, "t'")
    nt, ntp = T.dim, Tp.dim
    off_io = nt + ntp
    blk = n * m
    dim = off_io + 3 * blk
    labels = list(T.labels) + list(Tp.labels)
    for i in range(3):
        labels += [f"iota{i}({S.labels[x]}⊗{Sp.labels[y]})" for x in range(n) for y in range(m)]

    def iota(i: int, xv: Vector, yv: Vector) -> Vector:
        return {off_io + i * blk + x * m + y: a * b for x, a in xv.items() for y, b in yv.items()}

    def tri_coords(v: Vector) -> Vector:
        return T.coordinates(v)

    def trip_coords(v: Vector) -> Vector:
        return {nt + k: x for k, x in Tp.coordinates(v).items()}

    t_maps = [comp.triple_maps(v, n) for v in T.vectors]
    tp_maps = [comp.triple_maps(v, m) for v in Tp.vectors]
    ev_S = [{x: ONE} for x in range(n)]
    ev_Sp = [{y: ONE} for y in range(m)]

    upper: dict = {}
    for i in range(nt):
        for j in range(i + 1, nt):
            upper[(i, j)] = tri_coords(_tri_bracket(T.vectors[i], T.vectors[j], n))
    for i in range(ntp):
        for j in range(i + 1, ntp):
            upper[(nt + i, nt + j)] = trip_coords(_tri_bracket(Tp.vectors[i], Tp.vectors[j], m))
    for k in range(nt):
        for i in range(3):
            d = t_maps[k][i]
            for x in range(n):
                dx = d.columns()[x]
                for y in range(m):
                    upper[(k, off_io + i * blk + x * m + y)] = iota(i, dx, ev_Sp[y]) if dx else {}
    for k in range(ntp):
        for i in range(3):
            d = tp_maps[k][i]
            for y in range(m):
                dy = d.columns()[y]
                for x in range(n):
                    upper[(nt + k, off_io + i * blk + x * m + y)] = iota(i, ev_S[x], dy) if dy else {}
    t_cache: dict = {}
    tp_cache: dict = {}
    for p in range(3 * blk):
        i, r = divmod(p, blk)
        x, xp = divmod(r, m)
        for q in range(p + 1, 3 * blk):
            j, s = divmod(q, blk)
            y, yp = divmod(s, m)
            if i == j:
                terms = []
                c = Sp.gram.entry(xp, yp)
                if c:
                    key = (x, y, i)
                    if key not in t_cache:
                        t_cache[key] = tri_coords(comp.theta_shift(comp.t_xy_vector(S, ev_S[x], ev_S[y]), n, i))
                    terms.append((c, t_cache[key]))
                c = S.gram.entry(x, y)
                if c:
                    key = (xp, yp, i)
                    if key not in tp_cache:
                        tp_cache[key] = trip_coords(comp.theta_shift(comp.t_xy_vector(Sp, ev_Sp[xp], ev_Sp[yp]), m, i))
                    terms.append((c, tp_cache[key]))
                upper[(off_io + p, off_io + q)] = lincomb(terms)
            elif j == (i + 1) % 3:
                upper[(off_io + p, off_io + q)] = iota((i + 2) % 3, S.mul(ev_S[x], ev_S[y]), Sp.mul(ev_Sp[xp], ev_Sp[yp]))
            else:
                v = iota((j + 2) % 3, S.mul(ev_S[y], ev_S[x]), Sp.mul(ev_Sp[yp], ev_Sp[xp]))
                upper[(off_io + p, off_io + q)] = {k: -a for k, a in v.items()}

    alg = StructuredAlgebra.from_upper(labels, upper)
    blocks = {"tri_S": range(0, nt), "tri_S'": range(nt, off_io)}
    for i in range(3):
        blocks[f"iota{i}"] = range(off_io + i * blk, off_io + (i + 1) * blk)
    model = ModelHandle(f"elduque({S.name},{Sp.name})", alg, blocks, {"S": S, "S'": Sp, "tri": T, "tri'": Tp, "iota": iota})

    def theta_aut() -> Matrix:
        cols = [tri_coords(comp.theta_shift(v, n, 1)) for v in T.vectors]
        cols += [trip_coords(comp.theta_shift(v, m, 1)) for v in Tp.vectors]
        for i in range(3):
            for x in range(n):
                for y in range(m):
                    cols.append(iota((i + iota_shift) % 3, ev_S[x], ev_Sp[y]))
        return Matrix.from_columns(cols, dim)

    def pair_aut(f: Matrix | None = None, fp: Matrix | None = None) -> Matrix:
        f = f if f is not None else Matrix.identity(n)
        fp = fp if fp is not None else Matrix.identity(m)
        fi, fpi = f.inverse(), fp.inverse()
        cols = [tri_coords(_tri_conjugate(v, n, f, fi)) for v in T.vectors]
        cols += [trip_coords(_tri_conjugate(v, m, fp, fpi)) for v in Tp.vectors]
        fc, fpc = f.columns(), fp.columns()
        for i in range(3):
            for x in range(n):
                for y in range(m):
                    cols.append(iota(i, fc[x], fpc[y]))
        return Matrix.from_columns(cols, dim)

    def iota_scaling(factors) -> Matrix:
        """Multiply iota_i by factors[i] (the Z2^2 grading automorphisms use signs)."""
        diag = [ONE] * off_io
        for i in range(3):
            diag += [scalar(factors[i])] * blk
        return Matrix.diagonal(diag)

    def iota_twist(i: int, eta: Matrix, factors) -> Matrix:
        """Identity on tri parts and on iota_i; iota_{i+k}(x (x) y) -> factors[k] iota_{i+k}(x (x) eta y)."""
        cols = [{k: ONE} for k in range(off_io)]
        ec = eta.columns()
        for blk_i in range(3):
            k = (blk_i - i) % 3
            for x in range(n):
                for y in range(m):
                    if k == 0:
                        cols.append(iota(blk_i, ev_S[x], ev_Sp[y]))
                    else:
                        cols.append(vscale(iota(blk_i, ev_S[x], ec[y]), scalar(factors[k])))
        return Matrix.from_columns(cols, dim)

    unit_iota = iota(0, S.paraunit, Sp.paraunit)
    cache: dict = {}

    def z_frame() -> EigenFrame:
        if "z" not in cache:
            d = alg.ad(unit_iota).scale(-I)
            cache["z"] = EigenFrame({k: eigenspace(d, scalar(k)) for k in range(-2, 3)}, dim)
        return cache["z"]

    def swap_aut() -> Matrix:
        if m != 2:
            raise ValueError("rho needs a two-dimensional S'")
        return pair_aut(None, Matrix.from_columns([{1: ONE}, {0: ONE}], 2))

    def hurwitz_grading_aut(k: int) -> Matrix:
        return pair_aut(comp.z2cube_automorphisms(S.hurwitz)[k - 1], None)

    def psi_aut(i: int) -> Matrix:
        return iota_twist(i, Matrix.diagonal([ONE, -ONE]), [ONE, I, -I])

    model.ingredients["unit_iota"] = unit_iota
    model.automorphisms["triality"] = theta_aut
    model.automorphisms["pair"] = pair_aut
    model.automorphisms["iota_scaling"] = iota_scaling
    model.automorphisms["iota_twist"] = iota_twist
    model.automorphisms["rho"] = swap_aut
    model.automorphisms["F"] = hurwitz_grading_aut
    model.automorphisms["Psi"] = psi_aut
    model.automorphisms["grading_derivation"] = lambda: alg.ad(unit_iota).scale(-I)
    model.automorphisms["t"] = lambda alpha: z_frame().semisimple(lambda k: scalar(alpha) ** k)
    return model


# ---------------------------------------------------------------- scalar skeletons

class Skeleton:
    """A bracket whose structure constants carry named unknown factors.

    ``entries[(i, j)]`` (i < j) is a list of (k, coeff, rule) where rule is
    None for a fixed term or the name of an unknown scalar multiplying it.
    """

    def __init__(self, labels: list[str], unknowns: list[str]):
        self.labels = labels
        self.unknowns = unknowns
        self.entries: dict = {}

    @property
    def dim(self) -> int:
        return len(self.labels)

    def put(self, i: int, j: int, vec: Vector, rule: str | None = None) -> None:
        if i == j or not vec:
            return
        if i > j:
            i, j = j, i
            vec = {k: -c for k, c in vec.items()}
        lst = self.entries.setdefault((i, j), [])
        lst.extend((k, c, rule) for k, c in vec.items() if c)

    def _full(self) -> dict:
        if not hasattr(self, "_full_cache"):
            full: dict = {}
            for (i, j), terms in self.entries.items():
                full[(i, j)] = terms
                full[(j, i)] = [(k, -c, r) for k, c, r in terms]
            self._full_cache = full
        return self._full_cache

    def rules_used(self) -> set:
        return {r for terms in self.entries.values() for _, _, r in terms if r is not None}

    def jacobi_polynomials(self, triples) -> list[dict]:
        """Each nonzero coordinate of J(x,y,z) as {monomial: coeff}; monomials are sorted tuples of rule names."""
        full = self._full()
        out = []
        for x, y, z in triples:
            acc: dict = {}
            for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
                for k, c1, r1 in full.get((a, b), ()):
                    for k2, c2, r2 in full.get((k, c), ()):
                        mono = tuple(sorted(r for r in (r1, r2) if r is not None))
                        slot = acc.setdefault(k2, {})
                        slot[mono] = slot.get(mono, ZERO) + c1 * c2
            for poly in acc.values():
                poly = {m: c for m, c in poly.items() if c}
                if poly:
                    out.append(poly)
        return out

    def algebra(self, values: dict, field=EXACT) -> StructuredAlgebra:
        upper: dict = {}
        for (i, j), terms in self.entries.items():
            v: dict = {}
            for k, c, r in terms:
                x = c if r is None else c * values[r]
                v[k] = v.get(k, ZERO) + x
            upper[(i, j)] = {k: x for k, x in v.items() if x}
        alg = StructuredAlgebra.from_upper(self.labels, upper)
        return alg if field is EXACT else alg.over(field)


def _sample_triples(blocks: dict, per_combo: int, seed: int = 0) -> list[tuple[int, int, int]]:
    import random

    rng = random.Random(seed)
    names = list(blocks)
    out = []
    for a in range(len(names)):
        for b in range(a, len(names)):
            for c in range(b, len(names)):
                ra, rb, rc = (list(blocks[names[t]]) for t in (a, b, c))
                for _ in range(per_combo):
                    out.append((rng.choice(ra), rng.choice(rb), rng.choice(rc)))
    return out


def solve_jacobi_scalars(skeleton: Skeleton, gauge: dict, triples) -> dict:
    """Solve the Jacobi equations on ``triples`` for the unknown scalars.

    Unknowns are found one at a time from equations that are linear in a
    single remaining unknown.  Unknowns that never occur in the bracket are
    reported as None.  Raises VerificationError when the system does not
    determine every occurring unknown, or when a solved value is zero or the
    equations are inconsistent.
    """
    used = skeleton.rules_used()
    values = {k: scalar(v) for k, v in gauge.items()}
    polys = skeleton.jacobi_polynomials(triples)
    progress = True
    while progress:
        progress = False
        for poly in polys:
            const, lin, other = ZERO, {}, False
            for mono, c in poly.items():
                unknown = [r for r in mono if r not in values]
                known = c
                for r in mono:
                    if r in values:
                        known = known * values[r]
                if not unknown:
                    const = const + known
                elif len(unknown) == 1:
                    lin[unknown[0]] = lin.get(unknown[0], ZERO) + known
                else:
                    other = True
            lin = {r: c for r, c in lin.items() if c}
            if other or len(lin) != 1:
                continue
            (r, c), = lin.items()
            values[r] = -const * c.inv()
            if values[r].is_zero():
                raise VerificationError(f"scalar {r} solves to zero")
            progress = True
    missing = sorted(used - set(values))
    if missing:
        raise VerificationError(f"unknowns not determined by the chosen gauge: {missing}")
    for poly in polys:
        total = ZERO
        for mono, c in poly.items():
            for r in mono:
                c = c * values[r]
            total = total + c
        if total:
            raise VerificationError("Jacobi equations are inconsistent", poly)
    result = {r: values.get(r) for r in skeleton.unknowns}
    return result


# ---------------------------------------------------------------- exterior algebra helpers

def _perm_sign(seq) -> int:
    s = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                s = -s
    return s


def _wedge_sorted(seq) -> tuple[int, tuple] | None:
    """Sign and sorted tuple of e_seq, or None when an index repeats."""
    if len(set(seq)) != len(seq):
        return None
    return _perm_sign(seq), tuple(sorted(seq))


def _minor(M: Matrix, rows, cols):
    a = [[M.entry(r, c) for c in cols] for r in rows]
    return (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]))


def _det(M: Matrix):
    from .exactlin import Echelon

    n = M.nrows
    rows = [dict(r) for r in M.rows]
    det = ONE
    for c in range(n):
        piv = next((r for r in range(c, n) if rows[r].get(c)), None)
        if piv is None:
            return ZERO
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        p = rows[c][c]
        det = det * p
        pinv = p.inv()
        for r in range(c + 1, n):
            x = rows[r].get(c)
            if x:
                rows[r] = vadd(rows[r], rows[c], EXACT, -x * pinv)
    return det


TRIPLES6 = list(combinations(range(6), 3))
TRIPLE_INDEX = {t: k for k, t in enumerate(TRIPLES6)}


def _complement(I) -> tuple:
    return tuple(k for k in range(6) if k not in I)


def _gl_action_wedge(a: int, b: int, I: tuple, dual: bool) -> Vector:
    """E_ab acting on e_I (or on e*_I when dual), as {triple index: coeff}."""
    out: dict = {}
    src, dst, sgn = (a, b, -ONE) if dual else (b, a, ONE)
    for pos, i in enumerate(I):
        if i != src:
            continue
        seq = list(I)
        seq[pos] = dst
        w = _wedge_sorted(seq)
        if w is None:
            continue
        s, J = w
        k = TRIPLE_INDEX[J]
        out[k] = out.get(k, ZERO) + sgn * s
    return {k: c for k, c in out.items() if c}


# ---------------------------------------------------------------- the 5-grading model

FIVE_UNKNOWNS = ["a11", "a2m2", "a1m2", "am12", "a1m1", "b1", "am1m1", "b2"]
FIVE_GAUGE = {"a11": 1, "am1m1": 1, "a1m1": 1}


def five_grading_skeleton() -> tuple[Skeleton, dict]:
    labels = [f"E{i + 1}{j + 1}" for i in range(6) for j in range(6)]
    labels += ["e" + "".join(str(k + 1) for k in I) for I in TRIPLES6]
    labels += ["e*" + "".join(str(k + 1) for k in I) for I in TRIPLES6]
    labels += ["e123456", "e*123456"]
    off1, offm1, off2, offm2 = 36, 56, 76, 77
    blocks = {"gl": range(0, 36), "L1": range(off1, off1 + 20), "L-1": range(offm1, offm1 + 20), "L2": range(76, 77), "L-2": range(77, 78)}
    sk = Skeleton(labels, FIVE_UNKNOWNS)
    E = lambda i, j: i * 6 + j
    identity = {E(i, i): ONE for i in range(6)}

    # gl(V)
    for p in range(36):
        a, b = divmod(p, 6)
        for q in range(p + 1, 36):
            c, d = divmod(q, 6)
            v: dict = {}
            if b == c:
                v[E(a, d)] = v.get(E(a, d), ZERO) + ONE
            if d == a:
                v[E(c, b)] = v.get(E(c, b), ZERO) - ONE
            sk.put(p, q, {k: x for k, x in v.items() if x})
        for k, I in enumerate(TRIPLES6):
            sk.put(p, off1 + k, {off1 + t: c for t, c in _gl_action_wedge(a, b, I, False).items()})
            sk.put(p, offm1 + k, {offm1 + t: c for t, c in _gl_action_wedge(a, b, I, True).items()})
        if a == b:
            sk.put(p, off2, {off2: ONE})
            sk.put(p, offm2, {offm2: -ONE})

    def pairing_matrix(u: Vector, f: Vector, act_dual: bool) -> Vector:
        """psi_{f,u}: traceless part of M with M_ji = <E_ij u, f> (u, f over triple indices)."""
        M: dict = {}
        for i in range(6):
            for j in range(6):
                total = ZERO
                for k, cu in u.items():
                    for t, c in _gl_action_wedge(i, j, TRIPLES6[k], False).items():
                        if t in f:
                            total = total + cu * c * f[t]
                if total:
                    M[E(j, i)] = total
        tr = sum((M.get(E(i, i), ZERO) for i in range(6)), ZERO)
        if tr:
            sixth = tr * CycloScalar.rational(Fraction(1, 6))
            for i in range(6):
                M[E(i, i)] = M.get(E(i, i), ZERO) - sixth
        return {k: x for k, x in M.items() if x}

    for k, I in enumerate(TRIPLES6):
        Ic = _complement(I)
        top = _perm_sign(I + Ic)  # e_I ^ e_Ic = top * e123456
        for t, J in enumerate(TRIPLES6):
            # L1 x L1 -> L2
            if t > k and set(J) == set(Ic):
                sk.put(off1 + k, off1 + t, {off2: scalar(top)}, "a11")
                sk.put(offm1 + k, offm1 + t, {offm2: scalar(top)}, "am1m1")
            # L1 x L-1 -> gl
            psi = pairing_matrix({k: ONE}, {t: ONE}, False)
            sk.put(off1 + k, offm1 + t, psi, "a1m1")
            if k == t:
                sk.put(off1 + k, offm1 + t, identity, "b1")
        # L1 x L-2 -> L-1: u _| f' = sum_K <e_K ^ u, f'> e*_K, here K = Ic
        sk.put(off1 + k, offm2, {offm1 + TRIPLE_INDEX[Ic]: scalar(_perm_sign(Ic + I))}, "a1m2")
        # L2 x L-1 -> L1: u' |_ f = sum_K <u', f ^ e*_K> e_K, here K = Ic
        sk.put(off2, offm1 + k, {off1 + TRIPLE_INDEX[Ic]: scalar(top)}, "am12")
    # L2 x L-2: psi vanishes, only the trace part survives
    sk.put(off2, offm2, identity, "b2")
    return sk, blocks


def five_grading_model(gauge: dict | None = None) -> ModelHandle:
    """gl(V) + L1 + L-1 + L2 + L-2 with V of dimension 6.

    Basis: E_ij (36), e_I for sorted triples I (20), e*_I (20), e123456, e*123456.
    """
    sk, blocks = five_grading_skeleton()
    gauge = dict(FIVE_GAUGE if gauge is None else gauge)
    values = solve_jacobi_scalars(sk, gauge, _sample_triples(blocks, 60))
    filled = {k: (v if v is not None else ONE) for k, v in values.items()}
    alg = sk.algebra(filled)
    model = ModelHandle("five_grading", alg, blocks, {"skeleton": sk}, scalars=values)
    _register_five_grading(model)
    return model


def _tilde(phi: Matrix) -> Matrix:
    """Extension of phi in GL(V) to the 5-grading model."""
    phi_inv = phi.inverse()
    cols = []
    for p in range(36):
        a, b = divmod(p, 6)
        # phi E_ab phi^-1 = (phi e_a)(e_b^T phi^-1)
        col: dict = {}
        for r, x in phi.columns()[a].items():
            for c, y in phi_inv.rows[b].items():
                col[r * 6 + c] = col.get(r * 6 + c, ZERO) + x * y
        cols.append({k: v for k, v in col.items() if v})
    for I in TRIPLES6:
        cols.append({36 + t: m for t, J in enumerate(TRIPLES6) if (m := _minor(phi, J, I))})
    for I in TRIPLES6:
        cols.append({56 + t: m for t, J in enumerate(TRIPLES6) if (m := _minor(phi_inv, I, J))})
    det = _det(phi)
    cols.append({76: det})
    cols.append({77: det.inv()})
    return Matrix.from_columns(cols, 78)


def _five_theta() -> Matrix:
    """theta: A -> -A^t on sl(V), identity on the center, e_I -> +-i e_Ic, -id on L2 + L-2."""
    third = CycloScalar.rational(Fraction(1, 3))
    cols = []
    for p in range(36):
        a, b = divmod(p, 6)
        if a == b:
            col = {k * 7: third for k in range(6)}
            col[p] = third - ONE
            cols.append(col)
        else:
            cols.append({b * 6 + a: -ONE})
    for off, sgn in ((36, I), (56, -I)):
        for T in TRIPLES6:
            Tc = _complement(T)
            cols.append({off + TRIPLE_INDEX[Tc]: sgn * _perm_sign(T + Tc)})
    cols += [{76: -ONE}, {77: -ONE}]
    return Matrix.from_columns(cols, 78)


def _grading_torus(alpha) -> Matrix:
    """f_alpha: alpha^n on L_n."""
    a = scalar(alpha)
    diag = [ONE] * 36 + [a] * 20 + [a.inv()] * 20 + [a * a, (a * a).inv()]
    return Matrix.diagonal(diag)


def _duality_map(signs) -> Matrix:
    """Grading-reversing candidate extending rho: L1 -> L-1, <x, rho(y)> = phi(y ^ x).

    rho is sl(V)-equivariant, so the candidate is the identity on sl(V) and
    negates the center; e*_J -> s1 e_Jc and L2 <-> L-2 carry the remaining signs.
    """
    s1, s2, s3 = (scalar(x) for x in signs)
    third = CycloScalar.rational(Fraction(1, 3))
    cols = []
    for p in range(36):
        a, b = divmod(p, 6)
        if a == b:
            # E_aa = (E_aa - I/6) + I/6  ->  (E_aa - I/6) - I/6
            col = {k * 7: -third for k in range(6)}
            col[p] = ONE - third
            cols.append(col)
        else:
            cols.append({p: ONE})
    for T in TRIPLES6:
        Tc = _complement(T)
        # <x, rho(e_T)> = phi(e_T ^ x): only x = e_Tc survives
        cols.append({56 + TRIPLE_INDEX[Tc]: scalar(_perm_sign(T + Tc))})
    for T in TRIPLES6:
        Tc = _complement(T)
        cols.append({36 + TRIPLE_INDEX[Tc]: s1 * _perm_sign(T + Tc)})
    cols += [{77: s2}, {76: s3}]
    return Matrix.from_columns(cols, 78)


def gl6(entries) -> Matrix:
    return Matrix.from_dense([[scalar(x) for x in row] for row in entries])


def diag6(*xs) -> Matrix:
    return Matrix.diagonal([scalar(x) for x in xs])


def f_ij(i: int, j: int) -> Matrix:
    """diag with -1 in positions i and j (1-based)."""
    return diag6(*[-1 if k in (i, j) else 1 for k in range(1, 7)])


def perm_matrix(sigma: dict) -> Matrix:
    """p_sigma: entry (i, sigma(i)) equal to 1; sigma given 1-based on the moved points."""
    rows = []
    for i in range(1, 7):
        rows.append({sigma.get(i, i) - 1: ONE})
    return Matrix(rows, 6)


def rotation(a, ap) -> Matrix:
    """psi_{a,a'}: [[a, a'], [-a', a]] on e1, e2 and the identity on e3..e6."""
    a, ap = scalar(a), scalar(ap)
    rows = [{0: a, 1: ap}, {0: -ap, 1: a}] + [{k: ONE} for k in range(2, 6)]
    return Matrix([{k: v for k, v in r.items() if v} for r in rows], 6)


def circle_sample(t) -> Matrix:
    """The T'1 element at parameter t: a = (t + 1/t)/2, a' = (t - 1/t)/(2i)."""
    t = scalar(t)
    half = CycloScalar.rational(Fraction(1, 2))
    return rotation((t + t.inv()) * half, (t - t.inv()) * half * (I.inv()))


def parse_cycles(text: str) -> dict:
    """'(1,4)(3,6)' -> {1: 4, 4: 1, 3: 6, 6: 3}."""
    import re

    sigma: dict = {}
    for cyc in re.findall(r"\(([^)]*)\)", text):
        pts = [int(x) for x in cyc.split(",") if x.strip()]
        for k, x in enumerate(pts):
            sigma[x] = pts[(k + 1) % len(pts)]
    return sigma


def _register_five_grading(model: ModelHandle) -> None:
    A = model.algebra
    reg = model.automorphisms
    reg["theta"] = _five_theta
    reg["tilde"] = lambda phi: _tilde(phi)
    reg["T1"] = lambda alpha: _grading_torus(alpha)
    reg["f"] = lambda i, j: _tilde(f_ij(i, j))
    reg["g1p"] = lambda: _tilde(diag6(1, 1, 1, -1, 1, -1))
    reg["g2p"] = lambda: _tilde(diag6(1, 1, 1, -1, -1, 1))
    reg["psi"] = lambda a, ap: _tilde(rotation(a, ap))
    reg["T1p"] = lambda t: _tilde(circle_sample(t))
    reg["p"] = lambda sigma: _tilde(perm_matrix(parse_cycles(sigma) if isinstance(sigma, str) else sigma))
    reg["phi0"] = lambda: _tilde(diag6(1, 1, 1, I, 1, -I))
    reg["phi1"] = lambda: _tilde(diag6(I, -I, 1, 1, 1, 1))
    reg["phi2"] = lambda: _tilde(diag6(-I, I, I, I, I, I))
    cache: dict = {}

    def outer_reversal() -> Matrix:
        # sign search over the finitely many candidates, keep the first automorphism
        if "rho" not in cache:
            for signs in product((1, -1), repeat=3):
                f = _duality_map(signs)
                if A.check_automorphism(f)[0]:
                    cache["rho"] = f
                    cache["rho_signs"] = signs
                    break
            else:
                raise VerificationError("no sign choice makes the grading reversal an automorphism")
        return cache["rho"]

    reg["reversal"] = outer_reversal
    model.ingredients["reversal_cache"] = cache


# ---------------------------------------------------------------- Adams' model

SL3_LABELS = ["E12", "E13", "E21", "E23", "E31", "E32", "H1", "H2"]
_SL3_OFF = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]


def sl3_coords(M: dict) -> Vector:
    """Coordinates of a traceless 3x3 matrix {(r, c): x} in SL3_LABELS."""
    out: dict = {}
    for k, rc in enumerate(_SL3_OFF):
        if M.get(rc):
            out[k] = M[rc]
    d1, d2 = M.get((0, 0), ZERO), M.get((1, 1), ZERO)
    if d1:
        out[6] = d1
    if d1 + d2:
        out[7] = d1 + d2
    return out


def sl3_matrix(k: int) -> dict:
    if k < 6:
        return {_SL3_OFF[k]: ONE}
    return {(0, 0): ONE, (1, 1): -ONE} if k == 6 else {(1, 1): ONE, (2, 2): -ONE}


def _mat3_mul(A: dict, B: dict) -> dict:
    out: dict = {}
    for (r, c), x in A.items():
        for (c2, s), y in B.items():
            if c == c2:
                out[(r, s)] = out.get((r, s), ZERO) + x * y
    return {k: v for k, v in out.items() if v}


def _eps(a: int, b: int, c: int) -> int:
    if len({a, b, c}) < 3:
        return 0
    return _perm_sign((a, b, c))


ADAMS_UNKNOWNS = ["c11", "c22", "c21"]


def adams_skeleton() -> tuple[Skeleton, dict]:
    labels = [f"{l}@{k + 1}" for k in range(3) for l in SL3_LABELS]
    words = list(product(range(3), repeat=3))
    labels += ["w" + "".join(str(a + 1) for a in w) for w in words]
    labels += ["w*" + "".join(str(a + 1) for a in w) for w in words]
    off1, off2 = 24, 51
    widx = {w: k for k, w in enumerate(words)}
    blocks = {"sl1": range(0, 8), "sl2": range(8, 16), "sl3": range(16, 24), "W": range(24, 51), "W*": range(51, 78)}
    sk = Skeleton(labels, ADAMS_UNKNOWNS)
    third = CycloScalar.rational(Fraction(1, 3))
    for k in range(3):
        for i in range(8):
            Mi = sl3_matrix(i)
            for j in range(i + 1, 8):
                Mj = sl3_matrix(j)
                comm = _mat3_mul(Mi, Mj)
                for key, v in _mat3_mul(Mj, Mi).items():
                    comm[key] = comm.get(key, ZERO) - v
                sk.put(8 * k + i, 8 * k + j, {8 * k + t: x for t, x in sl3_coords({a: b for a, b in comm.items() if b}).items()})
            for w in words:
                act1, act2 = {}, {}
                for (r, c), x in Mi.items():
                    if w[k] == c:
                        w2 = w[:k] + (r,) + w[k + 1:]
                        act1[off1 + widx[w2]] = act1.get(off1 + widx[w2], ZERO) + x
                    if w[k] == r:
                        w2 = w[:k] + (c,) + w[k + 1:]
                        act2[off2 + widx[w2]] = act2.get(off2 + widx[w2], ZERO) - x
                sk.put(8 * k + i, off1 + widx[w], act1)
                sk.put(8 * k + i, off2 + widx[w], act2)
    for p, u in enumerate(words):
        for q, v in enumerate(words):
            if q > p:
                wedge: dict = {}
                for c in product(range(3), repeat=3):
                    s = _eps(u[0], v[0], c[0]) * _eps(u[1], v[1], c[1]) * _eps(u[2], v[2], c[2])
                    if s:
                        wedge[widx[c]] = scalar(s)
                sk.put(off1 + p, off1 + q, {off1 * 0 + off2 + k: x for k, x in wedge.items()}, "c11")
                sk.put(off2 + p, off2 + q, {off1 + k: x for k, x in wedge.items()}, "c22")
            # [(x) f, (x) u] with f = w*_u-word, u = w_v-word
            out: dict = {}
            for k in range(3):
                others = [j for j in range(3) if j != k]
                if any(u[j] != v[j] for j in others):
                    continue
                M = {(v[k], u[k]): ONE}
                if u[k] == v[k]:
                    for d in range(3):
                        M[(d, d)] = M.get((d, d), ZERO) - third
                for t, x in sl3_coords({a: b for a, b in M.items() if b}).items():
                    out[8 * k + t] = out.get(8 * k + t, ZERO) + x
            sk.put(off2 + p, off1 + q, {a: b for a, b in out.items() if b}, "c21")
    return sk, blocks


def adams() -> ModelHandle:
    """sl(W)^3 + W (x) W (x) W + W* (x) W* (x) W*, dim 24 + 27 + 27."""
    sk, blocks = adams_skeleton()
    values = {r: ONE for r in ADAMS_UNKNOWNS}
    alg = sk.algebra(values)
    model = ModelHandle("adams", alg, blocks, {"skeleton": sk}, scalars=values)
    _register_adams(model)
    return model


def _adams_psi(f: Matrix) -> Matrix:
    words = list(product(range(3), repeat=3))
    widx = {w: k for k, w in enumerate(words)}
    f_inv = f.inverse()
    fc = f.columns()
    gt = f_inv.transpose().columns()  # f^-T: action on W*
    cols = []
    for k in range(3):
        for i in range(8):
            M = sl3_matrix(i)
            conj: dict = {}
            for (r, c), x in M.items():
                for r2, y in fc[r].items():
                    for c2, z in f_inv.rows[c].items():
                        conj[(r2, c2)] = conj.get((r2, c2), ZERO) + x * y * z
            cols.append({8 * k + t: v for t, v in sl3_coords({a: b for a, b in conj.items() if b}).items()})
    for off, cs in ((24, fc), (51, gt)):
        for w in words:
            col: dict = {}
            for a, x in cs[w[0]].items():
                for b, y in cs[w[1]].items():
                    for c, z in cs[w[2]].items():
                        col[off + widx[(a, b, c)]] = x * y * z
            cols.append({k: v for k, v in col.items() if v})
    return Matrix.from_columns(cols, 78)


def _adams_cycle() -> Matrix:
    """H2: u (x) v (x) w -> v (x) w (x) u; slot k of sl moves to slot k-1."""
    words = list(product(range(3), repeat=3))
    widx = {w: k for k, w in enumerate(words)}
    cols = []
    for k in range(3):
        for i in range(8):
            cols.append({8 * ((k - 1) % 3) + i: ONE})
    for off in (24, 51):
        for (a, b, c) in words:
            cols.append({off + widx[(b, c, a)]: ONE})
    return Matrix.from_columns(cols, 78)


def _register_adams(model: ModelHandle) -> None:
    from .cyclotomic import OMEGA

    reg = model.automorphisms
    reg["H1"] = lambda: Matrix.diagonal([ONE] * 24 + [OMEGA] * 27 + [OMEGA * OMEGA] * 27)
    reg["H2"] = _adams_cycle
    reg["Psi"] = lambda f: _adams_psi(f)
    reg["T"] = lambda alpha, beta: _adams_psi(Matrix.diagonal([scalar(alpha), scalar(beta), (scalar(alpha) * scalar(beta)).inv()]))


# ---------------------------------------------------------------- sl(U) + sl(V) + U (x) Lambda^3 V

def sl_labels(n: int, prefix: str) -> list[str]:
    labs = [f"{prefix}E{i + 1}{j + 1}" for i in range(n) for j in range(n) if i != j]
    return labs + [f"{prefix}H{k + 1}" for k in range(n - 1)]


def sl_coords(M: dict, n: int) -> Vector:
    """Coordinates of a traceless n x n matrix {(r, c): x} in sl_labels order."""
    out: dict = {}
    k = 0
    for i in range(n):
        for j in range(n):
            if i != j:
                if M.get((i, j)):
                    out[k] = M[(i, j)]
                k += 1
    acc = ZERO
    for d in range(n - 1):
        acc = acc + M.get((d, d), ZERO)
        if acc:
            out[k + d] = acc
    return out


def sl_matrix(k: int, n: int) -> dict:
    off = n * (n - 1)
    if k < off:
        i, r = divmod(k, n - 1)
        j = r if r < i else r + 1
        return {(i, j): ONE}
    d = k - off
    return {(d, d): ONE, (d + 1, d + 1): -ONE}


def _commutator_dict(A: dict, B: dict) -> dict:
    out = _mat3_mul(A, B)
    for key, v in _mat3_mul(B, A).items():
        out[key] = out.get(key, ZERO) - v
    return {k: v for k, v in out.items() if v}


A1A5_UNKNOWNS = ["lam", "mu"]


def a1a5_skeleton() -> tuple[Skeleton, dict]:
    labels = sl_labels(2, "u:") + sl_labels(6, "v:")
    labels += [f"u{a + 1}⊗e" + "".join(str(k + 1) for k in T) for a in range(2) for T in TRIPLES6]
    offV, offO = 3, 38
    blocks = {"slU": range(0, 3), "slV": range(3, 38), "UxL3V": range(38, 78)}
    sk = Skeleton(labels, A1A5_UNKNOWNS)
    odd = lambda a, t: offO + 20 * a + t
    for n, off in ((2, 0), (6, offV)):
        dimsl = n * n - 1
        for i in range(dimsl):
            Mi = sl_matrix(i, n)
            for j in range(i + 1, dimsl):
                sk.put(off + i, off + j, {off + t: x for t, x in sl_coords(_commutator_dict(Mi, sl_matrix(j, n)), n).items()})
            for a in range(2):
                for t, T in enumerate(TRIPLES6):
                    col: dict = {}
                    if n == 2:
                        for (r, c), x in Mi.items():
                            if c == a:
                                col[odd(r, t)] = col.get(odd(r, t), ZERO) + x
                    else:
                        for (r, c), x in Mi.items():
                            for s, y in _gl_action_wedge(r, c, T, False).items():
                                col[odd(a, s)] = col.get(odd(a, s), ZERO) + x * y
                    sk.put(off + i, odd(a, t), {k: v for k, v in col.items() if v})
    bform = {(0, 1): ONE, (1, 0): -ONE}
    sixth = CycloScalar.rational(Fraction(1, 6))
    for p in range(40):
        a, t = divmod(p, 20)
        T = TRIPLES6[t]
        for q in range(p + 1, 40):
            b, s = divmod(q, 20)
            S = TRIPLES6[s]
            terms: dict = {}
            if set(S) == set(_complement(T)):
                pair = scalar(_perm_sign(T + S))
                # phi_{v,w}(z) = b(v,z) w + b(w,z) v
                phi: dict = {}
                for z in range(2):
                    if bform.get((a, z)):
                        phi[(b, z)] = phi.get((b, z), ZERO) + bform[(a, z)]
                    if bform.get((b, z)):
                        phi[(a, z)] = phi.get((a, z), ZERO) + bform[(b, z)]
                sk.put(odd(a, t), odd(b, s), {k: pair * v for k, v in sl_coords({x: y for x, y in phi.items() if y}, 2).items()}, "lam")
            if bform.get((a, b)):
                # [x, y]: traceless part of M with M_ji = <E_ij(x), y>
                M: dict = {}
                for i in range(6):
                    for j in range(6):
                        for r, c in _gl_action_wedge(i, j, T, False).items():
                            if set(TRIPLES6[r]) == set(_complement(S)):
                                M[(j, i)] = M.get((j, i), ZERO) + c * _perm_sign(TRIPLES6[r] + S)
                tr = sum((M.get((d, d), ZERO) for d in range(6)), ZERO)
                if tr:
                    for d in range(6):
                        M[(d, d)] = M.get((d, d), ZERO) - tr * sixth
                vec = {offV + k: bform[(a, b)] * v for k, v in sl_coords({x: y for x, y in M.items() if y}, 6).items()}
                sk.put(odd(a, t), odd(b, s), vec, "mu")
    return sk, blocks


def a1a5_model(gauge: dict | None = None) -> ModelHandle:
    """sl(U) + sl(V) + U (x) Lambda^3 V with dim U = 2, dim V = 6."""
    sk, blocks = a1a5_skeleton()
    values = solve_jacobi_scalars(sk, dict({"lam": 1} if gauge is None else gauge), _sample_triples(blocks, 60))
    alg = sk.algebra(values)
    model = ModelHandle("a1a5", alg, blocks, {"skeleton": sk}, scalars=values)
    _register_a1a5(model)
    return model


def _conj_sl(f: Matrix, f_inv: Matrix, k: int, n: int) -> Vector:
    out: dict = {}
    fc = f.columns()
    for (r, c), x in sl_matrix(k, n).items():
        for r2, y in fc[r].items():
            for c2, z in f_inv.rows[c].items():
                out[(r2, c2)] = out.get((r2, c2), ZERO) + x * y * z
    return sl_coords({a: b for a, b in out.items() if b}, n)


def _a1a5_product(f1: Matrix, f2: Matrix) -> Matrix:
    """f1 x f2: conjugation on sl(U) + sl(V), v (x) x -> f1(v) (x) f2 . x."""
    f1i, f2i = f1.inverse(), f2.inverse()
    cols = [_conj_sl(f1, f1i, k, 2) for k in range(3)]
    cols += [{3 + t: v for t, v in _conj_sl(f2, f2i, k, 6).items()} for k in range(35)]
    wedge = [{s: m for s, S in enumerate(TRIPLES6) if (m := _minor(f2, S, T))} for T in TRIPLES6]
    f1c = f1.columns()
    for a in range(2):
        for t in range(20):
            cols.append({38 + 20 * b + s: x * y for b, x in f1c[a].items() for s, y in wedge[t].items()})
    return Matrix.from_columns(cols, 78)


def _register_a1a5(model: ModelHandle) -> None:
    from .cyclotomic import ZETA12

    reg = model.automorphisms
    eye2 = Matrix.identity(2)
    reg["prod"] = lambda f1, f2: _a1a5_product(f1, f2)
    reg["f1p"] = lambda: _a1a5_product(Matrix.diagonal([I, -I]), diag6(*([ZETA12] * 3 + [-ZETA12] * 3)))
    reg["f2p"] = lambda: Matrix.diagonal([ONE] * 38 + [-ONE] * 40)
    reg["f3p"] = lambda: _a1a5_product(
        Matrix([{1: I}, {0: I}], 2),
        Matrix([{3 + k: ZETA12} for k in range(3)] + [{k: ZETA12} for k in range(3)], 6))
    reg["s"] = lambda alpha, beta: _a1a5_product(eye2, diag6(alpha, beta, (scalar(alpha) * scalar(beta)).inv(), alpha, beta, (scalar(alpha) * scalar(beta)).inv()))
    reg["perm"] = lambda sigma: _a1a5_product(eye2, perm_matrix(parse_cycles(sigma) if isinstance(sigma, str) else sigma))


# ---------------------------------------------------------------- registry

def _tits_oct_jordan() -> ModelHandle:
    return tits(comp.split_octonions(), jor.mat3_jordan())


def _tits_binarion_albert() -> ModelHandle:
    return tits(comp.hurwitz_small("binarion"), jor.albert_algebra())


def _elduque_oct_binarion() -> ModelHandle:
    return elduque(comp.para(comp.split_octonions()), comp.para(comp.hurwitz_small("binarion")))


MODEL_BUILDERS: dict[str, Callable[[], ModelHandle]] = {
    "tits-oct-jordan": _tits_oct_jordan,
    "tits-binarion-albert": _tits_binarion_albert,
    "elduque": _elduque_oct_binarion,
    "five-grading": five_grading_model,
    "adams": adams,
    "a1a5": a1a5_model,
}
# the five constructions; tits-binarion-albert is a second Tits instance
PRIMARY_MODELS = ["tits-oct-jordan", "elduque", "five-grading", "adams", "a1a5"]
_MODEL_CACHE: dict[str, ModelHandle] = {}


def build_model(name: str) -> ModelHandle:
    """Build (once per process) the model registered under ``name``."""
    if name not in MODEL_BUILDERS:
        raise KeyError(f"unknown model {name!r}; known: {', '.join(MODEL_BUILDERS)}")
    if name not in _MODEL_CACHE:
        _MODEL_CACHE[name] = MODEL_BUILDERS[name]()
    return _MODEL_CACHE[name]
