"""Exact sparse linear algebra over Q(z36), with a modular backend for fast checks.

Vectors are dicts ``{index: scalar}`` with no stored zeros.  Matrices are
lists of such row dicts plus a column count.  Every routine takes a field
object; :data:`EXACT` works with :class:`CycloScalar` entries and
:class:`ModularField` with integers mod a prime p = 1 (mod 36).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .cyclotomic import ONE, ZERO, CycloScalar, modular_image, primitive_root_36, scalar

Vector = dict


class ExactField:
    name = "exact"
    zero = ZERO
    one = ONE
    exact = True

    def conv(self, x):
        return scalar(x)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        return a.inv()

    @staticmethod
    def fms(a, c, b):
        return a - c * b

    def __repr__(self):
        return "ExactField()"

    def __eq__(self, other):
        return isinstance(other, ExactField)

    def __hash__(self):
        return hash("exact")


class ModularField:
    """F_p with the embedding z36 -> r, r of order 36."""

    exact = False
    zero = 0
    one = 1

    def __init__(self, p: int, r: int | None = None):
        self.p = p
        self.r = primitive_root_36(p) if r is None else r
        if pow(self.r, 36, p) != 1 or pow(self.r, 18, p) == 1 or pow(self.r, 12, p) == 1:
            raise ValueError(f"{self.r} does not have order 36 mod {p}")
        self.name = f"modular({p},{self.r})"

    def conv(self, x):
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return modular_image(x, self.p, self.r)

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero mod p")
        return pow(a, -1, self.p)

    def fms(self, a, c, b):
        return (a - c * b) % self.p

    def __repr__(self):
        return f"ModularField({self.p}, {self.r})"

    def __eq__(self, other):
        return isinstance(other, ModularField) and (self.p, self.r) == (other.p, other.r)

    def __hash__(self):
        return hash((self.p, self.r))


EXACT = ExactField()


def make_field(arith: str = "exact", prime: int | None = None):
    if arith == "exact":
        return EXACT
    if arith == "modular":
        from .cyclotomic import default_primes

        return ModularField(prime if prime is not None else default_primes(1)[0])
    raise ValueError(f"unknown arithmetic mode {arith!r}")


# ---------------------------------------------------------------- vectors

def vconv(v: Vector, field) -> Vector:
    out = {}
    for k, x in v.items():
        y = field.conv(x)
        if y:
            out[k] = y
    return out


def vadd(u: Vector, v: Vector, field=EXACT, c=None) -> Vector:
    """u + c*v (c defaults to one)."""
    out = dict(u)
    if c is None:
        for k, x in v.items():
            y = field.add(out[k], x) if k in out else x
            if y:
                out[k] = y
            else:
                out.pop(k, None)
    else:
        for k, x in v.items():
            y = field.fms(out[k], field.neg(c), x) if k in out else field.mul(c, x)
            if y:
                out[k] = y
            else:
                out.pop(k, None)
    return out


def vscale(v: Vector, c, field=EXACT) -> Vector:
    if not c:
        return {}
    return {k: field.mul(c, x) for k, x in v.items()}


def vsub(u: Vector, v: Vector, field=EXACT) -> Vector:
    return vadd(u, v, field, field.neg(field.one))


def lincomb(terms: Iterable, field=EXACT) -> Vector:
    """Sum of c*v over (c, v) pairs."""
    out: dict = {}
    for c, v in terms:
        if not c:
            continue
        for k, x in v.items():
            y = field.mul(c, x)
            if k in out:
                y = field.add(out[k], y)
                if y:
                    out[k] = y
                else:
                    del out[k]
            elif y:
                out[k] = y
    return out


def dense(v: Vector, n: int, field=EXACT) -> list:
    return [v.get(i, field.zero) for i in range(n)]


def sparse(values: Sequence, field=EXACT) -> Vector:
    out = {}
    for i, x in enumerate(values):
        y = field.conv(x)
        if y:
            out[i] = y
    return out


# ---------------------------------------------------------------- echelon core

class Echelon:
    """Incrementally maintained reduced row echelon basis.

    Rows are kept fully reduced: each pivot row has a leading one at its pivot
    and zeros in every other pivot column, so the final row set is the unique
    RREF of the span.
    """

    def __init__(self, ncols: int, field=EXACT):
        self.ncols = ncols
        self.field = field
        self.rows: dict[int, Vector] = {}

    def reduce(self, v: Vector) -> Vector:
        f = self.field
        v = dict(v)
        for c in [c for c in v if c in self.rows]:
            a = v.get(c)
            if a:
                for k, x in self.rows[c].items():
                    if k in v:
                        y = f.fms(v[k], a, x)
                        if y:
                            v[k] = y
                        else:
                            del v[k]
                    else:
                        v[k] = f.neg(f.mul(a, x))
        return v

    def add(self, v: Vector) -> bool:
        """Insert v; return True when it enlarged the span."""
        f = self.field
        v = self.reduce(v)
        if not v:
            return False
        piv = min(v)
        s = f.inv(v[piv])
        if s != f.one:
            v = {k: f.mul(s, x) for k, x in v.items()}
        for c, row in self.rows.items():
            a = row.get(piv)
            if a:
                for k, x in v.items():
                    if k in row:
                        y = f.fms(row[k], a, x)
                        if y:
                            row[k] = y
                        else:
                            del row[k]
                    else:
                        row[k] = f.neg(f.mul(a, x))
        self.rows[piv] = v
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def basis(self) -> list[Vector]:
        return [self.rows[c] for c in sorted(self.rows)]


class Matrix:
    """Sparse matrix with row dicts; entries live in ``field``."""

    def __init__(self, rows: Sequence[Vector], ncols: int, field=EXACT):
        self.rows = [dict(r) for r in rows]
        self.ncols = ncols
        self.field = field
        self._cols = None

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    @classmethod
    def from_dense(cls, grid: Sequence[Sequence], field=EXACT) -> "Matrix":
        ncols = len(grid[0]) if grid else 0
        return cls([sparse(r, field) for r in grid], ncols, field)

    @classmethod
    def from_columns(cls, cols: Sequence[Vector], nrows: int, field=EXACT) -> "Matrix":
        rows: list[dict] = [{} for _ in range(nrows)]
        for j, col in enumerate(cols):
            for i, x in col.items():
                rows[i][j] = field.conv(x) if isinstance(x, int) else x
        m = cls.__new__(cls)
        m.rows, m.ncols, m.field, m._cols = rows, len(cols), field, None
        return m

    @classmethod
    def identity(cls, n: int, field=EXACT) -> "Matrix":
        return cls([{i: field.one} for i in range(n)], n, field)

    @classmethod
    def diagonal(cls, entries: Sequence, field=EXACT) -> "Matrix":
        rows = []
        for i, x in enumerate(entries):
            y = field.conv(x)
            rows.append({i: y} if y else {})
        return cls(rows, len(entries), field)

    def columns(self) -> list[Vector]:
        if self._cols is None:
            cols: list[dict] = [{} for _ in range(self.ncols)]
            for i, r in enumerate(self.rows):
                for j, x in r.items():
                    cols[j][i] = x
            self._cols = cols
        return self._cols

    def entry(self, i: int, j: int):
        return self.rows[i].get(j, self.field.zero)

    def to_dense(self) -> list[list]:
        return [dense(r, self.ncols, self.field) for r in self.rows]

    def to_field(self, field) -> "Matrix":
        if field == self.field:
            return self
        return Matrix([vconv(r, field) for r in self.rows], self.ncols, field)

    def transpose(self) -> "Matrix":
        return Matrix(self.columns(), self.nrows, self.field)

    def apply(self, v: Vector) -> Vector:
        """Matrix times column vector."""
        cols = self.columns()
        return lincomb(((c, cols[j]) for j, c in v.items()), self.field)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = [self.apply(c) for c in other.columns()]
        return Matrix.from_columns(cols, self.nrows, self.field)

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix([vadd(a, b, self.field) for a, b in zip(self.rows, other.rows)], self.ncols, self.field)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix([vsub(a, b, self.field) for a, b in zip(self.rows, other.rows)], self.ncols, self.field)

    def scale(self, c) -> "Matrix":
        c = self.field.conv(c)
        return Matrix([vscale(r, c, self.field) for r in self.rows], self.ncols, self.field)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    __hash__ = None

    def is_identity(self) -> bool:
        one = self.field.one
        return self.nrows == self.ncols and all(r == {i: one} for i, r in enumerate(self.rows))

    def inverse(self) -> "Matrix":
        n = self.nrows
        if n != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        f = self.field
        aug = [dict(r) for r in self.rows]
        for i, r in enumerate(aug):
            r[n + i] = f.one
        ech = Echelon(2 * n, f)
        for r in aug:
            ech.add(r)
        if ech.pivots()[:n] != list(range(n)) or ech.rank != n:
            raise ZeroDivisionError("matrix is singular")
        return Matrix([{k - n: x for k, x in ech.rows[i].items() if k >= n} for i in range(n)], n, f)

    def power(self, k: int) -> "Matrix":
        if k < 0:
            return self.inverse().power(-k)
        result = Matrix.identity(self.nrows, self.field)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, {self.field.name})"


# ---------------------------------------------------------------- operations

def rref(M: Matrix) -> tuple[Matrix, int]:
    """Reduced row echelon form (zero rows appended) and rank."""
    ech = Echelon(M.ncols, M.field)
    for r in M.rows:
        ech.add(r)
    basis = ech.basis()
    rows = basis + [{} for _ in range(M.nrows - len(basis))]
    return Matrix(rows, M.ncols, M.field), len(basis)


def rank(M: Matrix) -> int:
    return rref(M)[1]


class Subspace:
    """Subspace of field^n stored by its canonical RREF basis."""

    def __init__(self, ambient_dim: int, vectors: Iterable[Vector] = (), field=EXACT, _echelon: Echelon | None = None):
        if _echelon is None:
            _echelon = Echelon(ambient_dim, field)
            for v in vectors:
                _echelon.add(v)
        self.ambient_dim = ambient_dim
        self.field = field
        self._ech = _echelon
        self.pivots = tuple(_echelon.pivots())
        self.basis = tuple(_echelon.rows[c] for c in self.pivots)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        self._check(other)
        return self.pivots == other.pivots and self.basis == other.basis

    __hash__ = None

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(f"ambient dimension mismatch: {self.ambient_dim} vs {other.ambient_dim}")

    def contains(self, v: Vector) -> bool:
        return not self._ech.reduce(v)

    __contains__ = contains

    def coordinates(self, v: Vector) -> list:
        """Coefficients of v on ``basis``; raises if v is not in the subspace."""
        if not self.contains(v):
            raise ValueError("vector not in subspace")
        return [v.get(c, self.field.zero) for c in self.pivots]

    def issubspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(b) for b in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.ambient_dim, list(self.basis) + list(other.basis), self.field)

    def annihilator(self) -> "Subspace":
        """Vectors w with sum_i w_i v_i = 0 for every v in the subspace."""
        return kernel(Matrix(list(self.basis), self.ambient_dim, self.field))

    def intersection(self, other: "Subspace") -> "Subspace":
        self._check(other)
        f = self.field
        if self.dim == 0 or other.dim == 0:
            return Subspace(self.ambient_dim, (), f)
        ann = other.annihilator()
        if ann.dim == 0:
            return self
        # conditions on coefficients c: sum_i c_i <a_i, w> = 0 for each w
        rows = []
        for w in ann.basis:
            row = {}
            for i, a in enumerate(self.basis):
                s = f.zero
                for k, x in w.items():
                    y = a.get(k)
                    if y:
                        s = f.add(s, f.mul(x, y))
                if s:
                    row[i] = s
            rows.append(row)
        coeffs = kernel(Matrix(rows, self.dim, f))
        vecs = [lincomb(((c, self.basis[i]) for i, c in cv.items()), f) for cv in coeffs.basis]
        return Subspace(self.ambient_dim, vecs, f)

    __and__ = intersection

    def image(self, M: Matrix) -> "Subspace":
        return Subspace(M.nrows, [M.apply(b) for b in self.basis], self.field)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def span(vectors: Iterable[Vector], n: int, field=EXACT) -> Subspace:
    return Subspace(n, vectors, field)


def zero_subspace(n: int, field=EXACT) -> Subspace:
    return Subspace(n, (), field)


def full_space(n: int, field=EXACT) -> Subspace:
    return Subspace(n, [{i: field.one} for i in range(n)], field)


def kernel(M: Matrix) -> Subspace:
    """Null space {x : M x = 0}, canonical."""
    f = M.field
    ech = Echelon(M.ncols, f)
    for r in M.rows:
        ech.add(r)
    pivots = set(ech.rows)
    vecs = []
    for free in range(M.ncols):
        if free in pivots:
            continue
        v = {free: f.one}
        for p, row in ech.rows.items():
            x = row.get(free)
            if x:
                v[p] = f.neg(x)
        vecs.append(v)
    return Subspace(M.ncols, vecs, f)


def eigenspace(M: Matrix, lam) -> Subspace:
    f = M.field
    lam = f.conv(lam)
    shifted = [vadd(r, {i: lam}, f, f.neg(f.one)) for i, r in enumerate(M.rows)]
    return kernel(Matrix(shifted, M.ncols, f))


def solve(A: Matrix, b: Vector):
    """A particular solution of A x = b, or None when inconsistent."""
    f = A.field
    n = A.ncols
    ech = Echelon(n + 1, f)
    for i, r in enumerate(A.rows):
        row = dict(r)
        if i in b and b[i]:
            row[n] = b[i]
        ech.add(row)
    if n in ech.rows:
        return None
    x = {}
    for p, row in ech.rows.items():
        y = row.get(n)
        if y:
            x[p] = y
    return x


def restrict(M: Matrix, S: Subspace) -> Matrix:
    """Matrix of M on an invariant subspace S, in the RREF basis of S."""
    cols = []
    for b in S.basis:
        cols.append(sparse(S.coordinates(M.apply(b)), M.field))
    return Matrix.from_columns(cols, S.dim, M.field)


class IndexedBasis:
    """A chosen basis of a subspace with coordinate extraction.

    Candidates are added in order and kept when independent of the previous
    ones, so labels of the kept vectors stay meaningful.
    """

    def __init__(self, ambient_dim: int, field=EXACT):
        self.ambient_dim = ambient_dim
        self.field = field
        self.vectors: list[Vector] = []
        self.labels: list[str] = []
        self._ech = Echelon(ambient_dim + 4096, field)

    def offer(self, v: Vector, label: str = "") -> bool:
        tag = self.ambient_dim + len(self.vectors)
        row = dict(v)
        row[tag] = self.field.one
        red = self._ech.reduce(row)
        if not any(k < self.ambient_dim for k in red):
            return False
        self._ech.add(row)
        self.vectors.append(v)
        self.labels.append(label)
        return True

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def coordinates(self, v: Vector) -> Vector:
        """Sparse coefficients c with v = sum c_s vectors[s]; raises when v is outside the span."""
        red = self._ech.reduce(v)
        if any(k < self.ambient_dim for k in red):
            raise ValueError("vector not in span")
        f = self.field
        return {k - self.ambient_dim: f.neg(x) for k, x in red.items()}

    def combine(self, coords: Vector) -> Vector:
        return lincomb(((c, self.vectors[s]) for s, c in coords.items()), self.field)



class EigenFrame:
    """A basis adapted to a direct sum decomposition, with cached inverse.

    ``pieces`` maps a key (for instance a degree) to a subspace; the
    subspaces must be independent and fill the space.  ``semisimple(fn)`` is
    the map acting on the piece with key k by the scalar fn(k).
    """

    def __init__(self, pieces: dict, n: int, field=EXACT):
        self.keys, cols = [], []
        for key, S in pieces.items():
            for b in S.basis:
                cols.append(b)
                self.keys.append(key)
        if len(cols) != n:
            raise ValueError(f"pieces span {len(cols)} of {n} dimensions")
        self.n, self.field = n, field
        self.P = Matrix.from_columns(cols, n, field)
        self.P_inv = self.P.inverse()

    def semisimple(self, fn) -> Matrix:
        f = self.field
        cache: dict = {}
        rows = []
        for i, row in enumerate(self.P.rows):
            rows.append({j: f.mul(x, cache.setdefault(self.keys[j], f.conv(fn(self.keys[j])))) for j, x in row.items()})
        D = Matrix(rows, self.n, f)
        return D @ self.P_inv
