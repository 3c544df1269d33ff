"""Fine gradings of e6 as simultaneous eigenspace decompositions.

A grading is built from commuting automorphisms: finite-order ones give the
torsion coordinates, order-36 samples of tori give integer coordinates after
lifting the exponent of z36 to the symmetric range (-18, 18].  Component
keys are flat tuples, torsion coordinates first.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Sequence

from . import composition as comp
from . import jordan as jor
from .cyclotomic import ONE, ZETA, root_of_unity
from .exactlin import EXACT, Matrix, Subspace, Vector, eigenspace, full_space, lincomb, restrict
from .liealg import StructuredAlgebra, VerificationError
from .models import ModelHandle, build_model

ORDER = 36
LIFT_BOUND = 8


@dataclass(frozen=True)
class GroupSignature:
    """Z_p^a x Z^r, recorded as the list of torsion orders and the free rank."""

    torsion: tuple
    free_rank: int

    @property
    def ntorsion(self) -> int:
        return len(self.torsion)

    @property
    def rank(self) -> int:
        return len(self.torsion) + self.free_rank

    @property
    def prime(self) -> int | None:
        ps = set(self.torsion)
        if len(ps) > 1:
            raise ValueError(f"mixed torsion orders {self.torsion}")
        return ps.pop() if ps else None

    def normalize(self, g: Sequence[int]) -> tuple:
        a = self.ntorsion
        return tuple(x % self.torsion[k] for k, x in enumerate(g[:a])) + tuple(g[a:])

    def add(self, g, h) -> tuple:
        return self.normalize([x + y for x, y in zip(g, h)])

    def neg(self, g) -> tuple:
        return self.normalize([-x for x in g])

    def zero(self) -> tuple:
        return (0,) * self.rank

    def describe(self) -> str:
        parts = [f"Z{p}" for p in self.torsion] + ["Z"] * self.free_rank
        c = Counter(parts)
        return " x ".join(f"{k}^{n}" if n > 1 else k for k, n in c.items()) or "0"


@dataclass
class GradedDecomposition:
    algebra: StructuredAlgebra
    signature: GroupSignature
    components: dict  # key tuple -> Subspace
    sources: list = dc_field(default_factory=list)  # (name, role) in coordinate order
    notes: list = dc_field(default_factory=list)

    @property
    def field(self):
        return self.algebra.field

    @property
    def support(self) -> list:
        return sorted(self.components)

    def dims(self) -> dict:
        return {g: S.dim for g, S in self.components.items()}

    def type(self) -> tuple:
        return grading_type(self)

    def component_of(self, v: Vector):
        """Key of the component containing v, or None when v is not homogeneous."""
        for g, S in self.components.items():
            if S.contains(v):
                return g
        return None

    def check_spanning(self) -> bool:
        n = self.algebra.dim
        if sum(S.dim for S in self.components.values()) != n:
            return False
        total = Subspace(n, [b for S in self.components.values() for b in S.basis], self.field)
        return total.dim == n

    def compatibility_failure(self):
        """First (g, h, bracket) with [L_g, L_h] outside L_{g+h}, or None."""
        sig, A = self.signature, self.algebra
        keys = self.support
        for i, g in enumerate(keys):
            for h in keys[i:]:
                target = self.components.get(sig.add(g, h))
                for x in self.components[g].basis:
                    for y in self.components[h].basis:
                        z = A.bracket(x, y)
                        if z and (target is None or not target.contains(z)):
                            return g, h, z
        return None

    def check_compatibility(self) -> bool:
        return self.compatibility_failure() is None

    def support_generates(self) -> bool:
        rows = [list(g) for g in self.support]
        a = self.signature.ntorsion
        for k, p in enumerate(self.signature.torsion):
            rows.append([p if j == k else 0 for j in range(self.signature.rank)])
        return lattice_index(rows, self.signature.rank) == 1

    def coarsen(self, keep: Callable[[tuple], tuple], signature: GroupSignature) -> "GradedDecomposition":
        """Merge components along the group map ``keep``."""
        merged: dict = {}
        for g, S in self.components.items():
            merged.setdefault(keep(g), []).extend(S.basis)
        comps = {g: Subspace(self.algebra.dim, vs, self.field) for g, vs in merged.items()}
        return GradedDecomposition(self.algebra, signature, comps, list(self.sources), ["coarsening"])

    def restricted_to(self, S: Subspace) -> dict:
        """Dimensions of the intersections of the components with S (nonzero ones)."""
        out = {}
        for g, C in self.components.items():
            d = C.intersection(S).dim
            if d:
                out[g] = d
        return out

    def to_json(self, with_basis: bool = True) -> dict:
        def text(x):
            return x.to_text() if hasattr(x, "to_text") else str(x)

        comps = []
        for g in self.support:
            S = self.components[g]
            entry = {"degree": list(g), "dim": S.dim}
            if with_basis:
                entry["basis"] = [[[k, text(x)] for k, x in sorted(b.items())] for b in S.basis]
            comps.append(entry)
        return {
            "signature": {"torsion": list(self.signature.torsion), "free_rank": self.signature.free_rank},
            "sources": [list(s) for s in self.sources],
            "type": list(self.type()),
            "components": comps,
        }

    def dumps(self, with_basis: bool = True) -> str:
        return json.dumps(self.to_json(with_basis), sort_keys=True, separators=(",", ":"))


def grading_type(gr: GradedDecomposition) -> tuple:
    """(h_1, ..., h_r): h_i components of dimension i, h_r nonzero."""
    c = Counter(S.dim for S in gr.components.values() if S.dim)
    top = max(c)
    return tuple(c.get(i, 0) for i in range(1, top + 1))


def lattice_index(rows: list, n: int) -> int:
    """Index in Z^n of the lattice spanned by integer rows (0 when not full rank)."""
    rows = [list(r) for r in rows]
    det = 1
    for col in range(n):
        while True:
            live = [r for r in rows if r[col]]
            if not live:
                return 0
            piv = min(live, key=lambda r: abs(r[col]))
            others = [r for r in live if r is not piv]
            if not others:
                break
            for r in others:
                q = r[col] // piv[col]
                for j in range(n):
                    r[j] -= q * piv[j]
        det *= abs(piv[col])
        rows = [r for r in rows if r is not piv]
    return det


# ---------------------------------------------------------------- decomposition

def _lift(e: int) -> int:
    e %= ORDER
    return e - ORDER if e > ORDER // 2 else e


def _exponent_order(candidates: list[int]) -> list[int]:
    return sorted(candidates, key=lambda e: (abs(_lift(e)), _lift(e) < 0))


def _refine(S: Subspace, M: Matrix, exponents: list[int], field) -> dict:
    try:
        R = restrict(M, S)
    except ValueError:
        raise VerificationError("grading generators do not commute: a component is not invariant") from None
    out, total = {}, 0
    for e in exponents:
        E = eigenspace(R, field.conv(root_of_unity(e)))
        if E.dim:
            vecs = [lincomb(((c, S.basis[i]) for i, c in b.items()), field) for b in E.basis]
            out[e] = Subspace(S.ambient_dim, vecs, field)
            total += E.dim
            if total == S.dim:
                return out
    raise VerificationError(f"map is not diagonalizable over z36-powers on a component of dim {S.dim}")


def simultaneous_decomposition(
    algebra: StructuredAlgebra,
    torsion_gens: Sequence[tuple[Matrix, int]] = (),
    torus_samples: Sequence[Matrix] = (),
    free_transform: Sequence[Sequence] | None = None,
    sources: Sequence = (),
    check: bool = True,
) -> GradedDecomposition:
    """Common eigenspaces of commuting automorphisms.

    ``torsion_gens`` are (map, order) pairs; ``torus_samples`` are order-36
    samples of a torus, one per free coordinate.  ``free_transform`` is an
    optional rational matrix applied to the lifted torus weights (used when the
    torus is reparametrized); the results must be integers.
    """
    f = algebra.field
    n = algebra.dim
    comps: dict = {(): full_space(n, f)}
    for M, order in torsion_gens:
        if ORDER % order:
            raise ValueError(f"torsion order {order} does not divide {ORDER}")
        step = ORDER // order
        new = {}
        for key, S in comps.items():
            for e, E in _refine(S, M.to_field(f), [step * k for k in range(order)], f).items():
                new[key + (e // step,)] = E
        comps = new
    for M in torus_samples:
        new = {}
        for key, S in comps.items():
            for e, E in _refine(S, M.to_field(f), _exponent_order(list(range(ORDER))), f).items():
                new[key + (_lift(e),)] = E
        comps = new
    a = len(torsion_gens)
    weights = [k[a:] for k in comps]
    if weights and weights[0] and max(abs(x) for w in weights for x in w) > LIFT_BOUND:
        raise VerificationError(f"lifted torus weight outside [-{LIFT_BOUND}, {LIFT_BOUND}]: lift not certified")
    if free_transform is not None:
        relabeled = {}
        for key, S in comps.items():
            w = key[a:]
            nw = []
            for row in free_transform:
                x = sum(Fraction(c) * y for c, y in zip(row, w))
                if x.denominator != 1:
                    raise VerificationError(f"torus reparametrization gives non-integral weight for {w}")
                nw.append(int(x))
            relabeled[key[:a] + tuple(nw)] = S
        comps = relabeled
    sig = GroupSignature(tuple(o for _, o in torsion_gens), len(torus_samples))
    gr = GradedDecomposition(algebra, sig, comps, list(sources))
    if check:
        if not gr.check_spanning():
            raise VerificationError("components do not fill the algebra")
        bad = gr.compatibility_failure()
        if bad is not None:
            raise VerificationError(f"bracket compatibility fails for degrees {bad[0]} and {bad[1]}", bad)
    return gr


# ---------------------------------------------------------------- the six gradings

def h_automorphisms(model: ModelHandle) -> tuple[Matrix, Matrix]:
    """h1, h2 on the Tits model: omega^i and omega^j on the part of Mat3 of degree (i, j) in <b, c>."""
    from .cyclotomic import OMEGA

    J = model.ingredients["J"]
    pauli = jor.j_gradings(J)["pauli"]
    out = []
    for k in range(2):
        psi = comp.grading_automorphism(J, pauli, lambda g, k=k: OMEGA ** g[k])
        out.append(model.aut("extend_J", psi=psi))
    return out[0], out[1]


def tits_torus(model: ModelHandle, a, b) -> Matrix:
    """t_{a,b}: extension of the Cartan torus of the octonions."""
    return model.aut("extend_C", phi=comp.cartan_torus(model.ingredients["C"], a, b))


def jordan_torus(model: ModelHandle, a, b) -> Matrix:
    """s_{a,b}: extension of the torus of Mat3+ acting by a^n b^m in degree (n, m)."""
    return model.aut("extend_J", psi=jor.torus_on_mat3(model.ingredients["J"], a, b))


def f_automorphisms(model: ModelHandle) -> list[Matrix]:
    """f1, f2, f3: extensions of the Z2^3 grading automorphisms of the octonions."""
    return [model.aut("extend_C", phi=phi) for phi in comp.z2cube_automorphisms(model.ingredients["C"])]


# Z^4 degree table on g(S8, S): generators a1, a2, g1, g2 with a0 = -a1-a2, g0 = -g1-g2
_A = [(-1, -1, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0)]
_G = [(0, 0, -1, -1), (0, 0, 1, 0), (0, 0, 0, 1)]


def _vplus(*vs):
    return tuple(sum(x) for x in zip(*vs))


def _vneg(v):
    return tuple(-x for x in v)


def iota_degree(i: int, label: str) -> tuple:
    """deg iota_i(x (x) s) for x a canonical basis label of S8 (u0 read as u3)."""
    if label == "e1":
        return _A[i]
    if label == "e2":
        return _vneg(_A[i])
    kind, k = label[0], int(label[1]) % 3
    if k == i:
        d = _G[i]
    elif k == (i + 1) % 3:
        d = _vplus(_A[(i + 2) % 3], _G[(i + 1) % 3])
    else:
        d = _vplus(_vneg(_A[(i + 1) % 3]), _G[(i + 2) % 3])
    return d if kind == "u" else _vneg(d)


def gamma3_degree_table(model: ModelHandle) -> comp.DegreeMap:
    """Z^4 degrees of the basis of g(S8, S): zero on tri(S), additive on t_{x,y}."""
    S, Sp = model.ingredients["S"], model.ingredients["S'"]
    A = model.algebra
    n, m = S.dim, Sp.dim
    elems = []
    nt = len(model.blocks["tri_S"])
    for k, lab in enumerate(A.labels):
        if k < nt:
            x, y = lab[lab.index("(") + 1 : -1].split(",")
            d = _vplus(iota_degree(0, x), iota_degree(0, y))
        elif lab.startswith("iota"):
            i = int(lab[4])
            x = S.labels[(k - model.blocks["iota0"].start - i * n * m) // m]
            d = iota_degree(i, x)
        else:
            d = (0, 0, 0, 0)
        elems.append(({k: ONE}, d))
    return comp.DegreeMap((), 4, elems)


def degree_table_failure(A: StructuredAlgebra, table: comp.DegreeMap):
    """Brute-force additivity scan over all basis pairs: first (i, j) with a nonhomogeneous bracket."""
    deg = {}
    for v, g in table.elements:
        (k,) = v
        deg[k] = g
    for i in range(A.dim):
        for j in range(i + 1, A.dim):
            z = A.bracket({i: A.field.one}, {j: A.field.one})
            if z:
                target = _vplus(deg[i], deg[j])
                if any(deg[k] != target for k in z):
                    return i, j
    return None


def table_torus(table: comp.DegreeMap, coordinate: int, alpha=ZETA) -> Matrix:
    """Diagonal automorphism alpha^{deg_c} for a degree table on the standard basis."""
    diag = [None] * len(table.elements)
    for v, g in table.elements:
        (k,) = v
        diag[k] = alpha ** g[coordinate]
    return Matrix.diagonal(diag)


REALIZATIONS = {1: ("tits", "a1a5"), 2: ("elduque",), 3: ("elduque",), 4: ("tits", "adams"), 5: ("five-grading",), 6: ("five-grading",)}
EXPECTED_TYPES = {1: (48, 1, 0, 7), 2: (57, 0, 7), 3: (72, 1, 0, 1), 4: (60, 9), 5: (73, 0, 0, 0, 1), 6: (60, 7, 0, 1)}


def gamma_generators(gid: int, realization: str | None = None):
    """(model, torsion [(name, map, order)], torus [(name, map)], free_transform)."""
    realization = realization or REALIZATIONS[gid][0]
    if realization not in REALIZATIONS[gid]:
        raise ValueError(f"grading {gid} has no realization {realization!r}")
    if gid == 1 and realization == "tits":
        M = build_model("tits-oct-jordan")
        f = f_automorphisms(M)
        tors = [(f"f{k + 1}", f[k], 2) for k in range(3)]
        torus = [("s(z,1)", jordan_torus(M, ZETA, 1)), ("s(1,z)", jordan_torus(M, 1, ZETA))]
        return M, tors, torus, None
    if gid == 1:
        M = build_model("a1a5")
        tors = [(nm, M.aut(nm), 2) for nm in ("f1p", "f2p", "f3p")]
        torus = [("s'(z,1)", M.aut("s", alpha=ZETA, beta=1)), ("s'(1,z)", M.aut("s", alpha=1, beta=ZETA))]
        return M, tors, torus, None
    if gid == 2:
        M = build_model("elduque")
        tors = [("rho", M.aut("rho"), 2)] + [(f"F{k}", M.aut("F", k=k), 2) for k in (1, 2, 3)]
        return M, tors, [("t(z)", M.aut("t", alpha=ZETA))], None
    if gid == 3:
        M = build_model("elduque")
        table = gamma3_degree_table(M)
        torus = [(f"T4[{c}](z)", table_torus(table, c)) for c in range(4)]
        return M, [("rho", M.aut("rho"), 2)], torus, None
    if gid == 4 and realization == "tits":
        M = build_model("tits-oct-jordan")
        h1, h2 = h_automorphisms(M)
        torus = [("t(z,1)", tits_torus(M, ZETA, 1)), ("t(1,z)", tits_torus(M, 1, ZETA))]
        return M, [("h1", h1, 3), ("h2", h2, 3)], torus, None
    if gid == 4:
        from .cyclotomic import XI

        M = build_model("adams")
        h1p = M.aut("H1") @ M.aut("T", alpha=XI, beta=XI)
        torus = [("T(z,1)", M.aut("T", alpha=ZETA, beta=1)), ("T(1,z)", M.aut("T", alpha=1, beta=ZETA))]
        # T_{alpha,beta} = T'_{alpha beta^2, alpha/beta}: weights (n, m) -> ((n+m)/3, (2n-m)/3)
        transform = [[Fraction(1, 3), Fraction(1, 3)], [Fraction(2, 3), Fraction(-1, 3)]]
        return M, [("H1'", h1p, 3), ("H2'", M.aut("H2"), 3)], torus, transform
    if gid == 5:
        M = build_model("five-grading")
        tors = [("theta", M.aut("theta"), 2)] + [(f"f1{j}~", M.aut("f", i=1, j=j), 2) for j in (2, 3, 4, 5)]
        return M, tors, [("T1(z)", M.aut("T1", alpha=ZETA))], None
    if gid == 6:
        M = build_model("five-grading")
        tors = [("theta", M.aut("theta"), 2), ("g1'~", M.aut("g1p"), 2), ("g2'~", M.aut("g2p"), 2)]
        # free coordinates: T'1 first, then T1 (see the phi1 relation with psi_{-1,0})
        torus = [("T1'(z)", M.aut("T1p", t=ZETA)), ("T1(z)", M.aut("T1", alpha=ZETA))]
        return M, tors, torus, None
    raise ValueError(f"unknown grading id {gid}")


_GAMMA_CACHE: dict = {}


def build_gamma(gid: int, field=EXACT, realization: str | None = None, check: bool = True) -> GradedDecomposition:
    """The fine grading Gamma_gid over its universal group, computed in ``field``."""
    realization = realization or REALIZATIONS[gid][0]
    key = (gid, realization, field)
    if key in _GAMMA_CACHE:
        return _GAMMA_CACHE[key]
    M, tors, torus, transform = gamma_generators(gid, realization)
    sources = [(nm, f"Z{o}") for nm, _, o in tors] + [(nm, "Z") for nm, _ in torus]
    gr = simultaneous_decomposition(
        M.algebra.over(field),
        [(m, o) for _, m, o in tors],
        [m for _, m in torus],
        free_transform=transform,
        sources=sources,
        check=check,
    )
    gr.notes.append(f"model={M.name}")
    gr.model = M
    gr.generators = {nm: m for nm, m, _ in tors} | {nm: m for nm, m in torus}
    _GAMMA_CACHE[key] = gr
    return gr
