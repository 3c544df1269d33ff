"""Hurwitz and symmetric composition algebras, their gradings, derivations and triality."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .cyclotomic import OMEGA, ONE, ZERO, CycloScalar, scalar
from .exactlin import (
    EXACT,
    Echelon,
    Matrix,
    Subspace,
    Vector,
    kernel,
    lincomb,
    vadd,
    vscale,
    vsub,
)

HALF = CycloScalar.rational(Fraction(1, 2))


def flatten(M: Matrix, offset: int = 0) -> Vector:
    """Row-major coordinates of a square matrix; entry (i, j) goes to offset + i*n + j."""
    n = M.ncols
    return {offset + i * n + j: x for i, r in enumerate(M.rows) for j, x in r.items()}


def unflatten(v: Vector, n: int, offset: int = 0, field=EXACT) -> Matrix:
    rows: list[dict] = [{} for _ in range(n)]
    for k, x in v.items():
        k -= offset
        if 0 <= k < n * n:
            rows[k // n][k % n] = x
    return Matrix(rows, n, field)


def commutator(A: Matrix, B: Matrix) -> Matrix:
    return A @ B - B @ A


class TableAlgebra:
    """Finite-dimensional algebra given by products of basis elements.

    ``table[(i, j)]`` is the sparse vector e_i e_j; missing pairs multiply to zero.
    """

    def __init__(self, labels: Sequence[str], table: dict):
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.table = {k: v for k, v in table.items() if v}

    def basis_vector(self, i: int) -> Vector:
        return {i: ONE}

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def vec(self, label: str) -> Vector:
        return {self.index(label): ONE}

    def mul(self, x: Vector, y: Vector) -> Vector:
        terms = []
        for i, a in x.items():
            for j, b in y.items():
                v = self.table.get((i, j))
                if v:
                    terms.append((a * b, v))
        return lincomb(terms)

    def left_matrix(self, a: Vector) -> Matrix:
        return Matrix.from_columns([self.mul(a, {j: ONE}) for j in range(self.dim)], self.dim)

    def right_matrix(self, a: Vector) -> Matrix:
        return Matrix.from_columns([self.mul({j: ONE}, a) for j in range(self.dim)], self.dim)

    def is_commutative(self) -> bool:
        return all(self.table.get((i, j), {}) == self.table.get((j, i), {}) for i in range(self.dim) for j in range(i))

    def is_derivation(self, D: Matrix) -> bool:
        for i in range(self.dim):
            for j in range(self.dim):
                lhs = D.apply(self.table.get((i, j), {}))
                rhs = vadd(self.mul(D.columns()[i], {j: ONE}), self.mul({i: ONE}, D.columns()[j]))
                if lhs != rhs:
                    return False
        return True

    def is_automorphism(self, f: Matrix) -> bool:
        cols = f.columns()
        for i in range(self.dim):
            for j in range(self.dim):
                if f.apply(self.table.get((i, j), {})) != self.mul(cols[i], cols[j]):
                    return False
        return True

    def derivation_space(self) -> Subspace:
        """Kernel of the Leibniz system, as flattened n x n matrices."""
        n = self.dim
        ech = Echelon(n * n)
        rows_idx = {}
        for (x, m), v in self.table.items():
            rows_idx.setdefault(x, []).append((m, v))
        for x in range(n):
            for y in range(n):
                eq: dict = {}
                # D(e_x e_y)
                for m, c in self.table.get((x, y), {}).items():
                    for k in range(n):
                        eq.setdefault(k, {})
                        key = k * n + m
                        eq[k][key] = eq[k].get(key, ZERO) + c
                # - D(e_x) e_y = - sum_m D[m][x] e_m e_y
                for m in range(n):
                    for k, c in self.table.get((m, y), {}).items():
                        eq.setdefault(k, {})
                        key = m * n + x
                        eq[k][key] = eq[k].get(key, ZERO) - c
                    for k, c in self.table.get((x, m), {}).items():
                        eq.setdefault(k, {})
                        key = m * n + y
                        eq[k][key] = eq[k].get(key, ZERO) - c
                for row in eq.values():
                    row = {a: b for a, b in row.items() if b}
                    if row:
                        ech.add(row)
        return kernel(Matrix(ech.basis(), n * n))


class CompositionAlgebra(TableAlgebra):
    """Composition algebra with polar form ``gram`` (n(x, y) = n(x+y) - n(x) - n(y))."""

    def __init__(self, name, labels, table, gram: Matrix, flavor: str, unit=None, paraunit=None):
        super().__init__(labels, table)
        self.name = name
        self.gram = gram
        self.flavor = flavor
        self.unit = unit
        self.paraunit = paraunit

    @property
    def is_symmetric_flavor(self) -> bool:
        return self.flavor in ("para-hurwitz", "pseudo-octonion")

    def polar(self, x: Vector, y: Vector) -> CycloScalar:
        s = ZERO
        rows = self.gram.rows
        for i, a in x.items():
            r = rows[i]
            for j, b in y.items():
                g = r.get(j)
                if g:
                    s = s + a * b * g
        return s

    def norm(self, x: Vector) -> CycloScalar:
        return self.polar(x, x) * HALF

    def trace(self, x: Vector) -> CycloScalar:
        return self.polar(x, self.unit)

    def conj(self, x: Vector) -> Vector:
        return vsub(vscale(self.unit, self.trace(x)), x)

    def conj_matrix(self) -> Matrix:
        return Matrix.from_columns([self.conj({j: ONE}) for j in range(self.dim)], self.dim)

    def trace_zero_basis(self) -> list[Vector]:
        """Basis of C_0 (trace zero elements), canonical."""
        row = {j: self.trace({j: ONE}) for j in range(self.dim)}
        row = {j: x for j, x in row.items() if x}
        return list(kernel(Matrix([row], self.dim)).basis)

    # invariant checks
    def gram_rank(self) -> int:
        from .exactlin import rank

        return rank(self.gram)

    def check_polarization(self) -> bool:
        """n(ab, cd) + n(ad, cb) = n(a, c) n(b, d) on all basis 4-tuples."""
        n = self.dim
        prods = {(i, j): self.table.get((i, j), {}) for i in range(n) for j in range(n)}
        for a, b, c, d in product(range(n), repeat=4):
            lhs = self.polar(prods[a, b], prods[c, d]) + self.polar(prods[a, d], prods[c, b])
            rhs = self.gram.entry(a, c) * self.gram.entry(b, d)
            if lhs != rhs:
                return False
        return True

    def check_associative_form(self) -> bool:
        """n(x*y, z) = n(x, y*z) on all basis triples."""
        n = self.dim
        for x, y, z in product(range(n), repeat=3):
            if self.polar(self.table.get((x, y), {}), {z: ONE}) != self.polar({x: ONE}, self.table.get((y, z), {})):
                return False
        return True

    def check_paraunit(self) -> bool:
        e = self.paraunit
        for j in range(self.dim):
            x = {j: ONE}
            target = vsub(vscale(e, self.polar(e, x)), x)
            if self.mul(e, x) != target or self.mul(x, e) != target:
                return False
        return True

    def check_unit(self) -> bool:
        u = self.unit
        return all(self.mul(u, {j: ONE}) == {j: ONE} == self.mul({j: ONE}, u) for j in range(self.dim))

    def orthogonal_algebra(self) -> Subspace:
        """o(S, n): flattened operators d with n(dx, y) + n(x, dy) = 0."""
        n = self.dim
        rows = []
        for x in range(n):
            for y in range(x, n):
                row: dict = {}
                # n(d e_x, e_y) = sum_m D[m][x] g[m][y]
                for m in range(n):
                    g = self.gram.entry(m, y)
                    if g:
                        row[m * n + x] = row.get(m * n + x, ZERO) + g
                    g = self.gram.entry(x, m)
                    if g:
                        row[m * n + y] = row.get(m * n + y, ZERO) + g
                row = {k: v for k, v in row.items() if v}
                if row:
                    rows.append(row)
        return kernel(Matrix(rows, n * n))


def _table_from(labels, rule) -> dict:
    return {(i, j): rule(i, j) for i in range(len(labels)) for j in range(len(labels))}


OCTONION_LABELS = ["e1", "e2", "u1", "u2", "u3", "v1", "v2", "v3"]


def _octonion_table() -> dict:
    idx = {s: k for k, s in enumerate(OCTONION_LABELS)}
    t: dict = {}

    def put(a, b, c, sign=1):
        t[(idx[a], idx[b])] = {idx[c]: scalar(sign)}

    put("e1", "e1", "e1")
    put("e2", "e2", "e2")
    for i in (1, 2, 3):
        u, v = f"u{i}", f"v{i}"
        put("e1", u, u)
        put(u, "e2", u)
        put("e2", v, v)
        put(v, "e1", v)
        put(u, v, "e1", -1)
        put(v, u, "e2", -1)
        j, k = i % 3 + 1, (i + 1) % 3 + 1
        put(u, f"u{j}", f"v{k}")
        put(f"u{j}", u, f"v{k}", -1)
        put(v, f"v{j}", f"u{k}")
        put(f"v{j}", v, f"u{k}", -1)
    return t


def _pairing_gram(n: int, pairs) -> Matrix:
    rows: list[dict] = [{} for _ in range(n)]
    for a, b, c in pairs:
        rows[a][b] = scalar(c)
        rows[b][a] = scalar(c)
    return Matrix(rows, n)


def split_octonions() -> CompositionAlgebra:
    """Split Cayley algebra on the canonical basis e1, e2, u1, u2, u3, v1, v2, v3."""
    gram = _pairing_gram(8, [(0, 1, 1), (2, 5, 1), (3, 6, 1), (4, 7, 1)])
    return CompositionAlgebra("octonions", OCTONION_LABELS, _octonion_table(), gram, "hurwitz", unit={0: ONE, 1: ONE})


def hurwitz_small(kind: str) -> CompositionAlgebra:
    """The ground field, F+F, or Mat2(F) with determinant norm."""
    if kind == "field":
        return CompositionAlgebra("F", ["1"], {(0, 0): {0: ONE}}, Matrix([{0: scalar(2)}], 1), "hurwitz", unit={0: ONE})
    if kind == "binarion":
        table = {(0, 0): {0: ONE}, (1, 1): {1: ONE}}
        return CompositionAlgebra("F+F", ["e1", "e2"], table, _pairing_gram(2, [(0, 1, 1)]), "hurwitz", unit={0: ONE, 1: ONE})
    if kind == "quaternion-matrix":
        # basis E11, E22, E12, E21
        pos = [(0, 0), (1, 1), (0, 1), (1, 0)]
        table = {}
        for a, (i, j) in enumerate(pos):
            for b, (k, l) in enumerate(pos):
                if j == k:
                    table[(a, b)] = {pos.index((i, l)): ONE}
        gram = _pairing_gram(4, [(0, 1, 1), (2, 3, -1)])
        return CompositionAlgebra("Mat2", ["E11", "E22", "E12", "E21"], table, gram, "hurwitz", unit={0: ONE, 1: ONE})
    raise ValueError(f"unknown Hurwitz algebra kind {kind!r}")


def para(C: CompositionAlgebra) -> CompositionAlgebra:
    """Para-Hurwitz algebra x*y = conj(x) conj(y); the unit becomes a paraunit."""
    if C.unit is None:
        raise ValueError("para-Hurwitz construction needs a unital algebra")
    conj = [C.conj({j: ONE}) for j in range(C.dim)]
    table = {(i, j): C.mul(conj[i], conj[j]) for i in range(C.dim) for j in range(C.dim)}
    S = CompositionAlgebra("p" + C.name, C.labels, table, C.gram, "para-hurwitz", unit=None, paraunit=dict(C.unit))
    S.hurwitz = C
    return S


PSEUDO_LABELS = ["E12", "E13", "E21", "E23", "E31", "E32", "H1", "H2"]


def _pseudo_basis() -> list[list[list[CycloScalar]]]:
    mats = []
    for lab in PSEUDO_LABELS:
        m = [[ZERO] * 3 for _ in range(3)]
        if lab.startswith("E"):
            m[int(lab[1]) - 1][int(lab[2]) - 1] = ONE
        elif lab == "H1":
            m[0][0], m[1][1] = ONE, -ONE
        else:
            m[1][1], m[2][2] = ONE, -ONE
        mats.append(m)
    return mats


def _mat3_mul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(3)), ZERO) for j in range(3)] for i in range(3)]


def traceless3_coords(m) -> Vector:
    """Coordinates of a trace-zero 3x3 matrix on the pseudo-octonion basis."""
    v = {}
    for k, lab in enumerate(PSEUDO_LABELS[:6]):
        x = m[int(lab[1]) - 1][int(lab[2]) - 1]
        if x:
            v[k] = x
    if m[0][0]:
        v[6] = m[0][0]
    if m[2][2]:
        v[7] = -m[2][2]
    return v


def pseudo_octonions() -> CompositionAlgebra:
    """Pseudo-octonions on trace-zero 3x3 matrices.

    The norm is n(x) = -tr(x^2)/2, i.e. polar form -tr(xy); with the product
    below this is the scaling for which n(x*y) = n(x)n(y) holds.
    """
    mats = _pseudo_basis()
    w, w2 = OMEGA, OMEGA * OMEGA
    corr = (w - w2) / 3
    table = {}
    gram_rows: list[dict] = [{} for _ in range(8)]
    for i, a in enumerate(mats):
        for j, b in enumerate(mats):
            ab, ba = _mat3_mul(a, b), _mat3_mul(b, a)
            tr = ab[0][0] + ab[1][1] + ab[2][2]
            m = [[w * ab[r][c] - w2 * ba[r][c] - (corr * tr if r == c else ZERO) for c in range(3)] for r in range(3)]
            table[(i, j)] = traceless3_coords(m)
            if tr:
                gram_rows[i][j] = -tr
    return CompositionAlgebra("P8", PSEUDO_LABELS, table, Matrix(gram_rows, 8), "pseudo-octonion")


def pseudo_octonion_z3sq_generators() -> tuple[Vector, Vector]:
    """diag(1, w, w^2) and the cyclic permutation matrix, as elements of P8."""
    b = [[ONE, ZERO, ZERO], [ZERO, OMEGA, ZERO], [ZERO, ZERO, OMEGA * OMEGA]]
    c = [[ZERO, ONE, ZERO], [ZERO, ZERO, ONE], [ONE, ZERO, ZERO]]
    return traceless3_coords(b), traceless3_coords(c)


# ---------------------------------------------------------------- derivations

def d_ab(C: TableAlgebra, a: Vector, b: Vector) -> Matrix:
    """[l_a, l_b] + [l_a, r_b] + [r_a, r_b]."""
    la, lb, ra, rb = C.left_matrix(a), C.left_matrix(b), C.right_matrix(a), C.right_matrix(b)
    return commutator(la, lb) + commutator(la, rb) + commutator(ra, rb)


def inner_derivation_span(C: CompositionAlgebra) -> Subspace:
    basis0 = C.trace_zero_basis()
    n = C.dim
    return Subspace(n * n, [flatten(d_ab(C, x, y)) for i, x in enumerate(basis0) for y in basis0[i + 1:]])


# ---------------------------------------------------------------- gradings

@dataclass
class DegreeMap:
    """Homogeneous elements with degrees in Z_p^a x Z^r (torsion coordinates first)."""

    torsion: tuple
    free_rank: int
    elements: list = dc_field(default_factory=list)  # (vector, degree tuple)

    def normalize(self, g) -> tuple:
        t = len(self.torsion)
        return tuple(x % self.torsion[k] for k, x in enumerate(g[:t])) + tuple(g[t:])

    def add(self, g, h) -> tuple:
        return self.normalize(tuple(a + b for a, b in zip(g, h)))

    def components(self, dim: int) -> dict:
        comps: dict = {}
        for v, g in self.elements:
            comps.setdefault(self.normalize(g), []).append(v)
        return {g: Subspace(dim, vs) for g, vs in comps.items()}

    def check(self, algebra: TableAlgebra) -> bool:
        """Spanning, independence, and deg(xy) = deg x + deg y."""
        comps = self.components(algebra.dim)
        if sum(s.dim for s in comps.values()) != algebra.dim or len(self.elements) != algebra.dim:
            return False
        total = Subspace(algebra.dim, [v for v, _ in self.elements])
        if total.dim != algebra.dim:
            return False
        for v, g in self.elements:
            for w, h in self.elements:
                p = algebra.mul(v, w)
                if p:
                    target = comps.get(self.add(g, h))
                    if target is None or not target.contains(p):
                        return False
        return True


def cartan_grading(C: CompositionAlgebra) -> DegreeMap:
    degs = {"e1": (0, 0), "e2": (0, 0), "u1": (1, 0), "v1": (-1, 0), "u2": (0, 1), "v2": (0, -1), "u3": (-1, -1), "v3": (1, 1)}
    return DegreeMap((), 2, [({C.index(k): ONE}, g) for k, g in degs.items()])


def z2cube_elements(C: CompositionAlgebra) -> tuple[Vector, Vector, Vector]:
    """Orthogonal w1, w2, w3 with wi^2 = 1: e1 - e2, u1 - v1, u2 - v2."""
    w1 = {C.index("e1"): ONE, C.index("e2"): -ONE}
    w2 = {C.index("u1"): ONE, C.index("v1"): -ONE}
    w3 = {C.index("u2"): ONE, C.index("v2"): -ONE}
    return w1, w2, w3


def z2cube_grading(C: CompositionAlgebra) -> DegreeMap:
    w1, w2, w3 = z2cube_elements(C)
    one = C.unit
    w12 = C.mul(w1, w2)
    w23 = C.mul(w2, w3)
    w31 = C.mul(w3, w1)
    w123 = C.mul(w12, w3)
    elems = [
        (one, (0, 0, 0)), (w1, (1, 0, 0)), (w2, (0, 1, 0)), (w3, (0, 0, 1)),
        (w12, (1, 1, 0)), (w23, (0, 1, 1)), (w31, (1, 0, 1)), (w123, (1, 1, 1)),
    ]
    return DegreeMap((2, 2, 2), 0, elems)


def grading_automorphism(C: TableAlgebra, grading: DegreeMap, character) -> Matrix:
    """The map acting on each homogeneous element of degree g by character(g)."""
    # change of basis: columns are the homogeneous elements
    P = Matrix.from_columns([v for v, _ in grading.elements], C.dim)
    D = Matrix.diagonal([character(g) for _, g in grading.elements])
    return P @ D @ P.inverse()


def z2cube_automorphisms(C: CompositionAlgebra) -> list[Matrix]:
    """The three commuting order-2 automorphisms producing the Z2^3 grading."""
    gr = z2cube_grading(C)
    return [grading_automorphism(C, gr, lambda g, k=k: -1 if g[k] else 1) for k in range(3)]


def cartan_torus(C: CompositionAlgebra, a, b) -> Matrix:
    """t_{a,b}: acts on the Cartan component of degree (n, m) by a^n b^m."""
    gr = cartan_grading(C)
    a, b = scalar(a), scalar(b)
    return grading_automorphism(C, gr, lambda g: a ** g[0] * b ** g[1])


# ---------------------------------------------------------------- triality

def tri_offsets(n: int) -> tuple[int, int, int]:
    return (0, n * n, 2 * n * n)


def triple_vector(d0: Matrix, d1: Matrix, d2: Matrix) -> Vector:
    n = d0.ncols
    out = {}
    for k, d in enumerate((d0, d1, d2)):
        out.update(flatten(d, k * n * n))
    return out


def triple_maps(v: Vector, n: int) -> tuple[Matrix, Matrix, Matrix]:
    return tuple(unflatten(v, n, k * n * n) for k in range(3))


def triality(S: CompositionAlgebra) -> Subspace:
    """tri(S): triples in o(S)^3 with d0(x*y) = d1(x)*y + x*d2(y), as flat vectors of length 3 n^2."""
    n = S.dim
    N = 3 * n * n
    ech = Echelon(N)
    for o in S.orthogonal_algebra().annihilator().basis:
        for k in range(3):
            ech.add({key + k * n * n: val for key, val in o.items()})
    off1, off2 = n * n, 2 * n * n
    for x in range(n):
        for y in range(n):
            eq: dict = {}

            def acc(k, key, c):
                row = eq.setdefault(k, {})
                row[key] = row.get(key, ZERO) + c

            for m, c in S.table.get((x, y), {}).items():
                for k in range(n):
                    acc(k, k * n + m, c)
            for m in range(n):
                for k, c in S.table.get((m, y), {}).items():
                    acc(k, off1 + m * n + x, -c)
                for k, c in S.table.get((x, m), {}).items():
                    acc(k, off2 + m * n + y, -c)
            for row in eq.values():
                row = {a: b for a, b in row.items() if b}
                if row:
                    ech.add(row)
    return kernel(Matrix(ech.basis(), N))


def theta_shift(v: Vector, n: int, power: int = 1) -> Vector:
    """The triality automorphism (d0, d1, d2) -> (d2, d0, d1), applied `power` times."""
    block = n * n
    out = {}
    for k, x in v.items():
        slot, rest = divmod(k, block)
        out[((slot + power) % 3) * block + rest] = x
    return out


def sigma_xy(S: CompositionAlgebra, x: Vector, y: Vector) -> Matrix:
    cols = []
    for j in range(S.dim):
        z = {j: ONE}
        cols.append(vsub(vscale(y, S.polar(x, z)), vscale(x, S.polar(y, z))))
    return Matrix.from_columns(cols, S.dim)


def t_xy(S: CompositionAlgebra, x: Vector, y: Vector) -> tuple[Matrix, Matrix, Matrix]:
    """(sigma_{x,y}, q(x,y)/2 id - r_x l_y, q(x,y)/2 id - l_x r_y)."""
    h = S.polar(x, y) * HALF
    ident = Matrix.identity(S.dim).scale(h)
    rx, ly, lx, ry = S.right_matrix(x), S.left_matrix(y), S.left_matrix(x), S.right_matrix(y)
    return sigma_xy(S, x, y), ident - rx @ ly, ident - lx @ ry


def t_xy_vector(S: CompositionAlgebra, x: Vector, y: Vector) -> Vector:
    return triple_vector(*t_xy(S, x, y))


def z2cube_relabel(C: CompositionAlgebra, images: Sequence[Vector]) -> Matrix:
    """The automorphism sending w1, w2, w3 to the given elements.

    The images must satisfy the same relations (squares 1, pairwise
    anticommuting, the third orthogonal to the quaternions of the first two);
    the result is checked to be an automorphism.
    """

    def homogeneous(x1, x2, x3):
        m = C.mul
        return [C.unit, x1, x2, x3, m(x1, x2), m(x2, x3), m(x3, x1), m(m(x1, x2), x3)]

    P = Matrix.from_columns(homogeneous(*z2cube_elements(C)), C.dim)
    Q = Matrix.from_columns(homogeneous(*images), C.dim)
    f = Q @ P.inverse()
    if not C.is_automorphism(f):
        raise ValueError("the images do not define an automorphism")
    return f


def relabel_basis(C: TableAlgebra, mapping: dict) -> Matrix:
    """Signed relabeling of basis vectors: mapping[label] = (sign, target label); others fixed."""
    cols = []
    for lab in C.labels:
        sgn, tgt = mapping.get(lab, (1, lab))
        cols.append({C.index(tgt): scalar(sgn)})
    return Matrix.from_columns(cols, C.dim)
