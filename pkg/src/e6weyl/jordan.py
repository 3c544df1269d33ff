"""Hermitian 3x3 Jordan algebras over Hurwitz algebras and their derivations."""

from __future__ import annotations

from fractions import Fraction

from .composition import CompositionAlgebra, DegreeMap, TableAlgebra, flatten, hurwitz_small, split_octonions
from .cyclotomic import OMEGA, ONE, ZERO, CycloScalar
from .exactlin import Matrix, Subspace, Vector, lincomb, vadd, vscale, vsub

THIRD = CycloScalar.rational(Fraction(1, 3))
HALF = CycloScalar.rational(Fraction(1, 2))

# slot k (1-based) sits at (row, col) with its conjugate at (col, row)
SLOT_POS = {1: (2, 1), 2: (0, 2), 3: (1, 0)}


class JordanAlgebra(TableAlgebra):
    """H3(C) on the basis E1, E2, E3, then slot 1, 2, 3 each over the basis of C."""

    def __init__(self, C: CompositionAlgebra):
        self.C = C
        n = C.dim
        labels = ["E1", "E2", "E3"] + [f"a{k}({lab})" for k in (1, 2, 3) for lab in C.labels]
        self._n = n
        mats = [self._basis_matrix(i, n) for i in range(3 + 3 * n)]
        table = {}
        for i, x in enumerate(mats):
            for j in range(i, len(mats)):
                y = mats[j]
                p = self._coords(self._sym_product(x, y))
                if p:
                    table[(i, j)] = p
                    table[(j, i)] = p
        super().__init__(labels, table)
        self.trace_form = {0: THIRD, 1: THIRD, 2: THIRD}
        self.unit = {0: ONE, 1: ONE, 2: ONE}

    def _basis_matrix(self, idx: int, n: int):
        C = self.C
        m = [[{} for _ in range(3)] for _ in range(3)]
        if idx < 3:
            m[idx][idx] = dict(C.unit)
            return m
        k, c = divmod(idx - 3, n)
        r, s = SLOT_POS[k + 1]
        a = {c: ONE}
        m[r][s] = a
        m[s][r] = C.conj(a)
        return m

    def _matmul(self, x, y):
        C = self.C
        return [[lincomb((ONE, C.mul(x[i][k], y[k][j])) for k in range(3)) for j in range(3)] for i in range(3)]

    def _sym_product(self, x, y):
        a, b = self._matmul(x, y), self._matmul(y, x)
        return [[vscale(vadd(a[i][j], b[i][j]), HALF) for j in range(3)] for i in range(3)]

    def _coords(self, m) -> Vector:
        C = self.C
        v = {}
        for k in range(3):
            d = m[k][k]
            alpha = C.trace(d) * HALF
            if vscale(C.unit, alpha) != d:
                raise ArithmeticError("diagonal entry is not a scalar")
            if alpha:
                v[k] = alpha
        for k in (1, 2, 3):
            r, s = SLOT_POS[k]
            for c, x in m[r][s].items():
                v[3 + (k - 1) * self._n + c] = x
        return v

    def t(self, x: Vector) -> CycloScalar:
        return sum((self.trace_form.get(i, ZERO) * a for i, a in x.items()), ZERO)

    def star(self, x: Vector, y: Vector) -> Vector:
        """x*y = xy - t_J(xy) 1, closing on J0."""
        p = self.mul(x, y)
        return vsub(p, vscale(self.unit, self.t(p)))

    def trace_zero_basis(self) -> list[tuple[str, Vector]]:
        out = [("E1-E2", {0: ONE, 1: -ONE}), ("E2-E3", {1: ONE, 2: -ONE})]
        out += [(self.labels[i], {i: ONE}) for i in range(3, self.dim)]
        return out

    def slot(self, k: int, a: Vector) -> Vector:
        return {3 + (k - 1) * self._n + c: x for c, x in a.items()}


def h3(C: CompositionAlgebra) -> JordanAlgebra:
    if C.unit is None:
        raise ValueError("H3 needs a unital composition algebra")
    return JordanAlgebra(C)


def albert_algebra() -> JordanAlgebra:
    return h3(split_octonions())


def mat3_jordan() -> JordanAlgebra:
    """H3(F+F), isomorphic to Mat3(F)+ via the first component."""
    return h3(hurwitz_small("binarion"))


def D_xy(J: TableAlgebra, x: Vector, y: Vector) -> Matrix:
    """z -> x(yz) - y(xz)."""
    cols = []
    for j in range(J.dim):
        z = {j: ONE}
        cols.append(vsub(J.mul(x, J.mul(y, z)), J.mul(y, J.mul(x, z))))
    return Matrix.from_columns(cols, J.dim)


def der_basis(J: TableAlgebra) -> Subspace:
    """Derivations as flattened matrices (kernel of the Leibniz system)."""
    return J.derivation_space()


def inner_derivation_span(J: TableAlgebra) -> Subspace:
    n = J.dim
    return Subspace(n * n, [flatten(D_xy(J, {i: ONE}, {j: ONE})) for i in range(n) for j in range(i + 1, n)])


def jordan_identity_holds(J: TableAlgebra) -> bool:
    """(x^2 y) x = x^2 (y x) on all basis pairs and on pairs of sums of basis elements."""
    samples = [{i: ONE} for i in range(J.dim)]
    samples += [{i: ONE, (i + 1) % J.dim: ONE} for i in range(J.dim)]
    for x in samples:
        x2 = J.mul(x, x)
        for y in samples:
            if J.mul(J.mul(x2, y), x) != J.mul(x2, J.mul(y, x)):
                return False
    return True


# ---------------------------------------------------------------- Mat3 identification

# matrix unit (i, j) of Mat3 (0-based) -> basis index of H3(F+F)
def _mat3_units() -> dict:
    units = {(0, 0): 0, (1, 1): 1, (2, 2): 2}
    for k, (r, s) in SLOT_POS.items():
        base = 3 + (k - 1) * 2
        units[(r, s)] = base  # e1 component sits at (r, s)
        units[(s, r)] = base + 1  # e2 component shows up transposed
    return units


MAT3_UNITS = _mat3_units()


def mat3_to_vector(M) -> Vector:
    """A 3x3 matrix as an element of H3(F+F)."""
    v = {}
    for (i, j), k in MAT3_UNITS.items():
        x = M[i][j]
        if x:
            v[k] = x if isinstance(x, CycloScalar) else CycloScalar.rational(x)
    return v


def vector_to_mat3(v: Vector):
    inv = {k: ij for ij, k in MAT3_UNITS.items()}
    M = [[ZERO] * 3 for _ in range(3)]
    for k, x in v.items():
        i, j = inv[k]
        M[i][j] = x
    return M


def mat3_mul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(3)), ZERO) for j in range(3)] for i in range(3)]


def mat3_inverse(a):
    m = Matrix.from_dense(a)
    return m.inverse().to_dense()


def conjugation_automorphism(J: JordanAlgebra, g) -> Matrix:
    """x -> g x g^{-1} on H3(F+F) = Mat3(F)+."""
    gi = mat3_inverse(g)
    cols = []
    for j in range(J.dim):
        M = vector_to_mat3({j: ONE})
        cols.append(mat3_to_vector(mat3_mul(mat3_mul(g, M), gi)))
    return Matrix.from_columns(cols, J.dim)


PAULI_B = [[ONE, ZERO, ZERO], [ZERO, OMEGA, ZERO], [ZERO, ZERO, OMEGA * OMEGA]]
PAULI_C = [[ZERO, ZERO, ONE], [ONE, ZERO, ZERO], [ZERO, ONE, ZERO]]


def j_gradings(J: JordanAlgebra | None = None) -> dict[str, DegreeMap]:
    """The Z^2 grading of Mat3+ by matrix units and the Z3^2 grading by b^i c^j."""
    J = J or mat3_jordan()
    zdeg = {}
    for (i, j), k in MAT3_UNITS.items():
        # E_ij has degree e_i - e_j in the coordinates (n, m) of E12 -> (1,0), E23 -> (0,1)
        h = [(1, 1), (0, 1), (0, 0)]
        zdeg[k] = (h[i][0] - h[j][0], h[i][1] - h[j][1])
    z2 = DegreeMap((), 2, [({k: ONE}, zdeg[k]) for k in range(J.dim)])
    elems = []
    ident = [[ONE if i == j else ZERO for j in range(3)] for i in range(3)]
    bp = ident
    for a in range(3):
        cp = ident
        for b in range(3):
            elems.append((mat3_to_vector(mat3_mul(bp, cp)), (a, b)))
            cp = mat3_mul(cp, PAULI_C)
        bp = mat3_mul(bp, PAULI_B)
    z3 = DegreeMap((3, 3), 0, elems)
    return {"cartan": z2, "pauli": z3}


def torus_on_mat3(J: JordanAlgebra, a, b) -> Matrix:
    """s_{a,b}: multiplies the Z^2 component of degree (n, m) by a^n b^m."""
    a = a if isinstance(a, CycloScalar) else CycloScalar.rational(a)
    b = b if isinstance(b, CycloScalar) else CycloScalar.rational(b)
    diag = [ONE] * J.dim
    for v, g in j_gradings(J)["cartan"].elements:
        (k,) = v
        diag[k] = a ** g[0] * b ** g[1]
    return Matrix.diagonal(diag)
