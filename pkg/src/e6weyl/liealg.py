"""Structure-constant algebras: brackets, Jacobi, automorphism checks, fixed points and classes."""

from __future__ import annotations

import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .cyclotomic import CycloScalar
from .exactlin import EXACT, Matrix, Subspace, Vector, eigenspace, lincomb, vconv

# (order, dim of fixed subalgebra) -> conjugacy class of automorphisms of e6
AUT_TYPES = {
    (2, 38): "2A",
    (2, 46): "2B",
    (2, 52): "2C",
    (2, 36): "2D",
    (3, 36): "3B",
    (3, 24): "3C",
    (3, 30): "3D",
    (3, 28): "3E",
    (3, 46): "3F",
}


class VerificationError(AssertionError):
    """A structural check failed; ``witness`` names the offending basis elements."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class UnclassifiableError(ValueError):
    pass


@dataclass
class JacobiReport:
    ok: bool
    triples: int
    witness: tuple | None = None
    residual: Vector | None = None


class StructuredAlgebra:
    """Algebra on a labeled basis with sparse structure constants.

    ``table[(i, j)]`` is the vector [e_i, e_j]; for Lie algebras both orders are stored.
    """

    def __init__(self, labels: Sequence[str], table: dict, field=EXACT, lie: bool = True):
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.field = field
        self.lie = lie
        self.table = {k: v for k, v in table.items() if v}
        self.jacobi_verified = False

    @classmethod
    def from_upper(cls, labels, upper: dict, field=EXACT) -> "StructuredAlgebra":
        """Build a Lie algebra from brackets [e_i, e_j], i < j."""
        table = {}
        for (i, j), v in upper.items():
            if i == j:
                raise ValueError("diagonal bracket given")
            if i > j:
                i, j = j, i
                v = {k: field.neg(x) for k, x in v.items()}
            if v:
                table[(i, j)] = v
                table[(j, i)] = {k: field.neg(x) for k, x in v.items()}
        return cls(labels, table, field)

    def over(self, field) -> "StructuredAlgebra":
        if field == self.field:
            return self
        return StructuredAlgebra(self.labels, {k: vconv(v, field) for k, v in self.table.items()}, field, self.lie)

    def is_antisymmetric(self) -> bool:
        f = self.field
        for (i, j), v in self.table.items():
            w = self.table.get((j, i), {})
            if i == j or {k: f.neg(x) for k, x in v.items()} != w:
                return False
        return True

    def bracket(self, x: Vector, y: Vector) -> Vector:
        t = self.table
        f = self.field
        terms = []
        for i, a in x.items():
            for j, b in y.items():
                v = t.get((i, j))
                if v:
                    terms.append((f.mul(a, b), v))
        return lincomb(terms, f)

    def bracket_basis(self, x: Vector, k: int) -> Vector:
        t = self.table
        return lincomb(((a, t[(i, k)]) for i, a in x.items() if (i, k) in t), self.field)

    def ad(self, x: Vector) -> Matrix:
        return Matrix.from_columns([self.bracket(x, {j: self.field.one}) for j in range(self.dim)], self.dim, self.field)

    def check_jacobi(self, jobs: int = 1) -> JacobiReport:
        """[[x,y],z] + [[y,z],x] + [[z,x],y] = 0 on all basis triples i < j < k."""
        n = self.dim
        if not self.is_antisymmetric():
            return JacobiReport(False, 0, witness=("antisymmetry",))
        if jobs > 1:
            with ProcessPoolExecutor(jobs) as ex:
                parts = list(ex.map(_jacobi_rows, [(self, i) for i in range(n)]))
        else:
            parts = [_jacobi_rows((self, i)) for i in range(n)]
        total = 0
        for count, bad in parts:
            total += count
            if bad is not None:
                return JacobiReport(False, total, witness=bad[0], residual=bad[1])
        self.jacobi_verified = True
        return JacobiReport(True, total)

    def check_automorphism(self, f: Matrix) -> tuple[bool, tuple | None]:
        """f([e_i, e_j]) = [f e_i, f e_j] for all i < j; returns (ok, witness pair)."""
        f = f.to_field(self.field)
        cols = f.columns()
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                lhs = f.apply(self.table.get((i, j), {}))
                if lhs != self.bracket(cols[i], cols[j]):
                    return False, (i, j)
        return True, None

    def check_derivation(self, d: Matrix) -> tuple[bool, tuple | None]:
        d = d.to_field(self.field)
        cols = d.columns()
        fld = self.field
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                lhs = d.apply(self.table.get((i, j), {}))
                rhs = lincomb([(fld.one, self.bracket_basis(cols[i], j)), (fld.neg(fld.one), self.bracket_basis(cols[j], i))], fld)
                if lhs != rhs:
                    return False, (i, j)
        return True, None

    def dump(self) -> str:
        out = io.StringIO()
        out.write(f"dim {self.dim}\n")
        for i, lab in enumerate(self.labels):
            out.write(f"label {i} {lab}\n")
        for (i, j) in sorted(self.table):
            if i < j or not self.lie:
                for k in sorted(self.table[(i, j)]):
                    x = self.table[(i, j)][k]
                    out.write(f"{i} {j} {k} {x.to_text() if isinstance(x, CycloScalar) else x}\n")
        return out.getvalue()

    @classmethod
    def load(cls, text: str) -> "StructuredAlgebra":
        labels: dict[int, str] = {}
        upper: dict = {}
        dim = None
        for line in text.splitlines():
            if not line.strip():
                continue
            if line.startswith("dim "):
                dim = int(line.split()[1])
            elif line.startswith("label "):
                _, idx, lab = line.split(" ", 2)
                labels[int(idx)] = lab
            else:
                i, j, k, rest = line.split(" ", 3)
                upper.setdefault((int(i), int(j)), {})[int(k)] = CycloScalar.from_text(rest)
        if dim is None or len(labels) != dim:
            raise ValueError("malformed structure-constant dump")
        return cls.from_upper([labels[i] for i in range(dim)], upper)

    def __repr__(self):
        return f"StructuredAlgebra(dim={self.dim}, field={self.field.name})"


def _jacobi_rows(args):
    A, i = args
    n = A.dim
    t = A.table
    f = A.field
    count = 0
    for j in range(i + 1, n):
        xy = t.get((i, j), {})
        for k in range(j + 1, n):
            count += 1
            r = lincomb(
                [
                    (f.one, A.bracket_basis(xy, k)),
                    (f.one, A.bracket_basis(t.get((j, k), {}), i)),
                    (f.one, A.bracket_basis(t.get((k, i), {}), j)),
                ],
                f,
            )
            if r:
                return count, ((i, j, k), r)
    return count, None


# ---------------------------------------------------------------- maps

def fixed_subspace(f: Matrix) -> Subspace:
    return eigenspace(f, f.field.one)


def order_of(f: Matrix, bound: int = 72) -> int:
    g = f
    for k in range(1, bound + 1):
        if g.is_identity():
            return k
        g = g @ f
    raise ValueError(f"order exceeds bound {bound}")


def classify(f: Matrix, bound: int = 3) -> str:
    """Conjugacy class of an automorphism of e6 of order 2 or 3 by its fixed dimension."""
    k = order_of(f, bound)
    if k not in (2, 3):
        raise UnclassifiableError(f"classification only covers orders 2 and 3, got order {k}")
    return classify_by(k, fixed_subspace(f).dim)


def classify_by(order: int, fixdim: int) -> str:
    try:
        return AUT_TYPES[(order, fixdim)]
    except KeyError:
        raise UnclassifiableError(f"no class of order {order} fixes a subalgebra of dimension {fixdim}") from None


def commute(f: Matrix, g: Matrix) -> bool:
    return f @ g == g @ f
