"""Automorphisms of grading groups induced by normalizer elements, and finite matrix groups.

A grading group Z_p^a x Z^r is written in its canonical basis, torsion
coordinates first.  An automorphism is an (a+r)x(a+r) integer block matrix
[[A, C], [0, B]] with A, C read mod p; it acts on column vectors.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
from functools import lru_cache
from typing import Iterable, Sequence

from .exactlin import Matrix, vscale
from .gradings import GradedDecomposition, GroupSignature
from .liealg import VerificationError

DEFAULT_CAP = 10**6
B_BOUND = 4


# ---------------------------------------------------------------- block matrices

class GroupAutMatrix:
    """Block matrix [[A, C], [0, B]] acting on Z_p^a x Z^r."""

    __slots__ = ("signature", "rows", "_hash")

    def __init__(self, signature: GroupSignature, rows: Sequence[Sequence[int]]):
        a, n = signature.ntorsion, signature.rank
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"expected a {n}x{n} matrix")
        p = signature.prime
        norm = []
        for i, r in enumerate(rows):
            r = [int(x) for x in r]
            if i < a:
                r = [x % p for x in r]
            elif any(r[:a]):
                raise ValueError("lower-left block must vanish")
            norm.append(tuple(r))
        self.signature = signature
        self.rows = tuple(norm)
        self._hash = hash((signature, self.rows))

    @classmethod
    def identity(cls, signature: GroupSignature) -> "GroupAutMatrix":
        n = signature.rank
        return cls(signature, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def from_blocks(cls, signature: GroupSignature, A=(), C=(), B=()) -> "GroupAutMatrix":
        a, r = signature.ntorsion, signature.free_rank
        rows = [list(A[i]) + (list(C[i]) if r else []) for i in range(a)]
        rows += [[0] * a + list(B[i]) for i in range(r)]
        return cls(signature, rows)

    @property
    def A(self) -> tuple:
        a = self.signature.ntorsion
        return tuple(r[:a] for r in self.rows[:a])

    @property
    def C(self) -> tuple:
        a = self.signature.ntorsion
        return tuple(r[a:] for r in self.rows[:a])

    @property
    def B(self) -> tuple:
        a = self.signature.ntorsion
        return tuple(r[a:] for r in self.rows[a:])

    def lower_left_zero(self) -> bool:
        a = self.signature.ntorsion
        return all(not any(r[:a]) for r in self.rows[a:])

    def key(self) -> bytes:
        """Row-major int8 byte encoding."""
        return np.array(self.rows, dtype=np.int8).tobytes()

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupAutMatrix) and self.signature == other.signature and self.rows == other.rows

    def __hash__(self) -> int:
        return self._hash

    def __matmul__(self, other: "GroupAutMatrix") -> "GroupAutMatrix":
        if self.signature != other.signature:
            raise ValueError("signature mismatch")
        cols = list(zip(*other.rows))
        return GroupAutMatrix(self.signature, [[sum(x * y for x, y in zip(r, c)) for c in cols] for r in self.rows])

    def apply(self, g: Sequence[int]) -> tuple:
        return self.signature.normalize([sum(x * y for x, y in zip(r, g)) for r in self.rows])

    def is_identity(self) -> bool:
        return self == GroupAutMatrix.identity(self.signature)

    def is_invertible(self) -> bool:
        a, p = self.signature.ntorsion, self.signature.prime
        ok = True
        if a:
            ok = _det_int(self.A) % p != 0
        if self.signature.free_rank:
            ok = ok and abs(_det_int(self.B)) == 1
        return ok

    def inverse(self) -> "GroupAutMatrix":
        sig = self.signature
        a, r, p = sig.ntorsion, sig.free_rank, sig.prime
        if not self.is_invertible():
            raise ValueError("matrix is not invertible over the grading group")
        Ai = _inverse_mod(self.A, p) if a else ()
        Bi = _inverse_unimodular(self.B) if r else ()
        if a and r:
            AC = _matmul(Ai, self.C)
            Ci = [[(-x) % p for x in row] for row in _matmul(AC, Bi)]
        else:
            Ci = [[] for _ in range(a)]
        return GroupAutMatrix.from_blocks(sig, Ai, Ci, Bi)

    def order(self, bound: int = 10_000) -> int:
        g = self
        for k in range(1, bound + 1):
            if g.is_identity():
                return k
            g = g @ self
        raise ValueError(f"order exceeds {bound}")

    def to_json(self) -> list:
        return [list(r) for r in self.rows]

    def __repr__(self):
        return f"GroupAutMatrix({self.signature.describe()}, {list(map(list, self.rows))})"


def _matmul(X, Y) -> list:
    cols = list(zip(*Y))
    return [[sum(x * y for x, y in zip(r, c)) for c in cols] for r in X]


def _det_int(M) -> int:
    M = [[Fraction(x) for x in r] for r in M]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for i in range(c + 1, n):
            q = M[i][c] / M[c][c]
            if q:
                M[i] = [x - q * y for x, y in zip(M[i], M[c])]
    return int(det)


def _inverse_mod(M, p: int) -> list:
    n = len(M)
    aug = [[x % p for x in r] + [int(i == j) for j in range(n)] for i, r in enumerate(M)]
    for c in range(n):
        piv = next(i for i in range(c, n) if aug[i][c])
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = pow(aug[c][c], -1, p)
        aug[c] = [(x * inv) % p for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                q = aug[i][c]
                aug[i] = [(x - q * y) % p for x, y in zip(aug[i], aug[c])]
    return [r[n:] for r in aug]


def _inverse_unimodular(M) -> list:
    n = len(M)
    aug = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(M)]
    for c in range(n):
        piv = next(i for i in range(c, n) if aug[i][c])
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                q = aug[i][c]
                aug[i] = [x - q * y for x, y in zip(aug[i], aug[c])]
    out = [[x for x in r[n:]] for r in aug]
    if any(x.denominator != 1 for r in out for x in r):
        raise ValueError("free block is not unimodular")
    return [[int(x) for x in r] for r in out]


# ---------------------------------------------------------------- finite groups

class FiniteMatrixGroup:
    """A finite set of block matrices stored by byte key, with the generators it came from."""

    def __init__(self, signature: GroupSignature, keys: set, generators: Sequence[GroupAutMatrix] = ()):
        self.signature = signature
        self.keys = keys
        self.generators = list(generators)

    def __len__(self) -> int:
        return len(self.keys)

    @property
    def order(self) -> int:
        return len(self.keys)

    def __contains__(self, g) -> bool:
        return (g.key() if isinstance(g, GroupAutMatrix) else g) in self.keys

    def elements(self):
        n = self.signature.rank
        for k in self.keys:
            flat = np.frombuffer(k, dtype=np.int8).tolist()
            yield GroupAutMatrix(self.signature, [flat[i * n : (i + 1) * n] for i in range(n)])

    def array(self) -> np.ndarray:
        n = self.signature.rank
        buf = b"".join(sorted(self.keys))
        return np.frombuffer(buf, dtype=np.int8).reshape(-1, n, n).astype(np.int64)

    def is_abelian(self) -> bool:
        gens = self.generators or list(self.elements())
        return all(x @ y == y @ x for x in gens for y in gens)

    def is_closed(self) -> bool:
        """Closed under product and inverse.

        With generators inside the set this is the equality with their closure;
        without generators every product is checked.
        """
        if self.generators:
            return all(g in self for g in self.generators) and closure(self.generators).keys == self.keys
        if GroupAutMatrix.identity(self.signature) not in self:
            return False
        X = self.array()
        return all(_keys(_mul_batch(X, _arr(g), self.signature)) <= self.keys for g in self.elements())


def _arr(g: GroupAutMatrix) -> np.ndarray:
    return np.array(g.rows, dtype=np.int64)


def _mul_batch(X: np.ndarray, g: np.ndarray, sig: GroupSignature) -> np.ndarray:
    Y = X @ g
    a = sig.ntorsion
    if a:
        Y[:, :a, :] %= sig.prime
    return Y


def _keys(X: np.ndarray) -> set:
    return {row.tobytes() for row in X.astype(np.int8)}


def closure(gens: Iterable[GroupAutMatrix], cap: int = DEFAULT_CAP, bound: int = B_BOUND, within: set | None = None) -> FiniteMatrixGroup:
    """Breadth-first closure of the generated group.

    Free entries are certified to stay in [-bound, bound]; ``within`` is an
    optional key set every element must belong to.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("closure needs at least one generator")
    sig = gens[0].signature
    if any(g.signature != sig for g in gens):
        raise ValueError("generators have different signatures")
    a = sig.ntorsion
    e = GroupAutMatrix.identity(sig)
    seen = {e.key()}
    frontier = _arr(e)[None]
    G = [_arr(g) for g in gens]
    while len(frontier):
        prods = np.concatenate([_mul_batch(frontier, g, sig) for g in G])
        if prods[:, a:, a:].size and np.abs(prods[:, a:, a:]).max() > bound:
            raise VerificationError(f"free block entry outside [-{bound}, {bound}] during closure")
        fresh = []
        for i, row in enumerate(prods.astype(np.int8)):
            k = row.tobytes()
            if k not in seen:
                if within is not None and k not in within:
                    raise VerificationError("closure leaves the prescribed set", prods[i].tolist())
                seen.add(k)
                fresh.append(i)
        if len(seen) > cap:
            raise VerificationError(f"closure exceeds cap {cap}")
        frontier = prods[fresh]
    return FiniteMatrixGroup(sig, seen, gens)


# ---------------------------------------------------------------- small matrix groups

def gl_group(n: int, p: int) -> list[tuple]:
    """All invertible n x n matrices over Z_p, as tuples of rows."""
    out = []
    for entries in itertools.product(range(p), repeat=n * n):
        M = [entries[i * n : (i + 1) * n] for i in range(n)]
        if _det_int(M) % p:
            out.append(tuple(tuple(r) for r in M))
    return out


def integer_group(gens: Sequence[Sequence[Sequence[int]]]) -> list[tuple]:
    """The finite group of integer matrices generated by ``gens``."""
    sig = GroupSignature((), len(gens[0]))
    G = closure([GroupAutMatrix(sig, g) for g in gens])
    return sorted(g.rows for g in G.elements())


TAU1 = ((0, -1), (1, -1))
TAU2 = ((-1, 1), (0, 1))
SIGMA_D6 = ((1, -1), (1, 0))
TAU_D6 = ((1, -1), (0, -1))
F4_GENERATORS = (
    ((0, -1, 1, -1), (1, -1, 1, 0), (0, 0, 1, 0), (0, 0, 0, 1)),
    ((-1, 1, 0, -1), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)),
    ((0, 0, 1, -1), (0, 1, 0, 0), (1, 0, 0, 1), (0, 0, 0, 1)),
    ((1, 0, -1, 1), (0, 1, -1, 0), (0, 0, 0, -1), (0, 0, 1, -1)),
)
SWAP2 = ((0, 1), (1, 0))
REFLECT2 = ((1, 0), (0, -1))
MINUS2 = ((-1, 0), (0, -1))

SP4_FORM = ((0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1), (1, 1, 1, 0))


def sp4_membership(A: Sequence[Sequence[int]]) -> bool:
    """A C A^t = C over Z_2 for the all-ones off-diagonal form C."""
    At = list(zip(*A))
    P = _matmul(_matmul(A, SP4_FORM), At)
    return all(P[i][j] % 2 == SP4_FORM[i][j] for i in range(4) for j in range(4))


@lru_cache(maxsize=None)
def sp4_group() -> tuple:
    """Exhaustive scan of the 2^16 binary 4x4 matrices."""
    out = []
    for bits in range(1 << 16):
        A = [[(bits >> (4 * i + j)) & 1 for j in range(4)] for i in range(4)]
        if sp4_membership(A):
            out.append(tuple(tuple(r) for r in A))
    return tuple(out)


def kappa0(row: Sequence[int]) -> int:
    ones = sum(x % 2 for x in row)
    if ones in (1, 2):
        return 0
    if ones in (3, 4):
        return 1
    raise ValueError("kappa0 is defined only for rows with one to four ones")


def kappa(A: Sequence[Sequence[int]]) -> tuple:
    return tuple(kappa0(r) for r in A)


def transposition_image(i: int, j: int) -> tuple:
    """X_sigma for the transposition (i j) of S6 acting on even sign patterns modulo -1.

    Basis: the patterns f_{1k} with minus signs in positions 1 and k, k = 2..5
    (1-based); sigma permutes positions.
    """
    basis = [frozenset({1, k}) for k in range(2, 6)]
    sigma = {i: j, j: i}

    def coords(S: frozenset) -> tuple:
        # reduce modulo the all-minus vector: take the representative of even size <= 3 with 1 included or not
        full = frozenset(range(1, 7))
        for T in (S, full - S):
            for c in itertools.product(range(2), repeat=4):
                acc = frozenset()
                for bit, B in zip(c, basis):
                    if bit:
                        acc = acc ^ B
                if acc == T:
                    return c
        raise ValueError("pattern outside the span")

    # row k holds the coordinates of the image of the k-th basis pattern
    return tuple(coords(frozenset(sigma.get(x, x) for x in B)) for B in basis)


# ---------------------------------------------------------------- induced automorphisms

class _Frame:
    """All component bases side by side, with the inverse change of basis."""

    def __init__(self, gr: GradedDecomposition):
        self.keys = gr.support
        cols, owner = [], []
        for k in self.keys:
            for b in gr.components[k].basis:
                cols.append(b)
                owner.append(k)
        n = gr.algebra.dim
        self.P = Matrix.from_columns(cols, n, gr.field)
        self.Pinv = self.P.inverse()
        self.owner = owner
        self.slices = {}
        pos = 0
        for k in self.keys:
            d = gr.components[k].dim
            self.slices[k] = range(pos, pos + d)
            pos += d


def _frame(gr: GradedDecomposition) -> _Frame:
    fr = getattr(gr, "_frame", None)
    if fr is None:
        fr = _Frame(gr)
        gr._frame = fr
    return fr


def induced_permutation(f: Matrix, gr: GradedDecomposition) -> dict:
    """The support bijection s -> t with f(L_s) = L_t."""
    fr = _frame(gr)
    Q = (fr.Pinv @ f.to_field(gr.field) @ fr.P).columns()
    perm = {}
    for s in fr.keys:
        targets = set()
        for j in fr.slices[s]:
            targets.update(fr.owner[i] for i in Q[j])
        if len(targets) != 1:
            raise VerificationError(f"not in Aut(Gamma): the image of the component {s} is not a component", s)
        (t,) = targets
        if gr.components[t].dim != gr.components[s].dim:
            raise VerificationError(f"not in Aut(Gamma): the component {s} maps into a larger component", s)
        perm[s] = t
    if len(set(perm.values())) != len(perm):
        raise VerificationError("not in Aut(Gamma): two components share an image")
    return perm


def matrix_from_permutation(perm: dict, sig: GroupSignature) -> GroupAutMatrix:
    """Solve for the block matrix reproducing a support bijection, and verify it on the whole support."""
    a, r, p = sig.ntorsion, sig.free_rank, sig.prime
    support = sorted(perm)
    rows: list = [None] * (a + r)
    if r:
        # free rows: B X = Y on a rational basis of the free parts of the support
        chosen, ech = [], []
        for s in support:
            v = [Fraction(x) for x in s[a:]]
            w = _reduce(ech, v)
            if any(w):
                ech.append(w)
                chosen.append(s)
            if len(chosen) == r:
                break
        if len(chosen) < r:
            raise VerificationError("support does not span the free part")
        X = [[Fraction(s[a + i]) for s in chosen] for i in range(r)]
        Xi = _inverse_rational(X)
        for i in range(r):
            y = [Fraction(perm[s][a + i]) for s in chosen]
            brow = [sum(y[k] * Xi[k][j] for k in range(r)) for j in range(r)]
            if any(x.denominator != 1 for x in brow):
                raise VerificationError("induced map on the free part is not integral")
            rows[a + i] = [0] * a + [int(x) for x in brow]
    for i in range(a):
        sols = [
            cand
            for cand in itertools.product(range(p), repeat=a + r)
            if all((sum(c * x for c, x in zip(cand, s)) - perm[s][i]) % p == 0 for s in support)
        ]
        if len(sols) != 1:
            raise VerificationError(f"torsion row {i} has {len(sols)} solutions: support does not generate mod {p}")
        rows[i] = list(sols[0])
    M = GroupAutMatrix(sig, rows)
    for s in support:
        if M.apply(s) != tuple(perm[s]):
            raise VerificationError(f"solved matrix does not reproduce the image of {s}", s)
    if not M.is_invertible():
        raise VerificationError("induced matrix is not invertible")
    return M


def induced_on_group(f: Matrix, gr: GradedDecomposition) -> GroupAutMatrix:
    """alpha_f with f(L_s) = L_{alpha_f(s)}, as a block matrix in the canonical basis."""
    return matrix_from_permutation(induced_permutation(f, gr), gr.signature)


def _reduce(ech: list, v: list) -> list:
    v = list(v)
    for w in ech:
        piv = next(i for i, x in enumerate(w) if x)
        if v[piv]:
            q = v[piv] / w[piv]
            v = [x - q * y for x, y in zip(v, w)]
    return v


def _inverse_rational(M) -> list:
    n = len(M)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(M)]
    for c in range(n):
        piv = next(i for i in range(c, n) if aug[i][c])
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                q = aug[i][c]
                aug[i] = [x - q * y for x, y in zip(aug[i], aug[c])]
    return [r[n:] for r in aug]


# ---------------------------------------------------------------- claimed Weyl groups

SIGNATURES = {
    1: GroupSignature((2, 2, 2), 2),
    2: GroupSignature((2, 2, 2, 2), 1),
    3: GroupSignature((2,), 4),
    4: GroupSignature((3, 3), 2),
    5: GroupSignature((2, 2, 2, 2, 2), 1),
    6: GroupSignature((2, 2, 2), 2),
}

GL3_Z2_GENS = (((0, 0, 1), (1, 0, 0), (0, 1, 0)), ((1, 0, 0), (1, 1, 0), (0, 0, 1)))
GL2_Z3_GENS = (((0, 1), (2, 0)), ((1, 1), (0, 1)), ((1, 0), (0, 2)))
GL2_Z2_GENS = (((0, 1), (1, 0)), ((1, 1), (0, 1)))


def _ident(n: int) -> tuple:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _zeros(r: int, c: int) -> tuple:
    return tuple((0,) * c for _ in range(r))


def _bits(k: int, p: int = 2):
    return itertools.product(range(p), repeat=k)


@lru_cache(maxsize=None)
def factor_groups() -> dict:
    """The factors of the claimed sets, each enumerated directly."""
    return {
        "GL3(Z2)": gl_group(3, 2),
        "GL2(Z3)": gl_group(2, 3),
        "GL2(Z2)": gl_group(2, 2),
        "D3": integer_group([TAU1, TAU2]),
        "D6": integer_group([SIGMA_D6, TAU_D6]),
        "W(F4)": integer_group(F4_GENERATORS),
        "signed-perm2": integer_group([SWAP2, REFLECT2, MINUS2]),
        "Sp4(Z2)": list(sp4_group()),
    }


def _claimed_rows(gid: int):
    """Yield the rows of every matrix in the claimed set (parametrization of each proposition)."""
    F = factor_groups()
    if gid == 1:
        for A in F["GL3(Z2)"]:
            for B in F["D3"]:
                for c in _bits(6):
                    C = (c[0:2], c[2:4], c[4:6])
                    yield [A[i] + C[i] for i in range(3)] + [(0, 0, 0) + B[i] for i in range(2)]
    elif gid == 2:
        for A in F["GL3(Z2)"]:
            for b, *D in _bits(4):
                for c in (1, -1):
                    yield [(1, 0, 0, 0, b)] + [(0,) + A[i] + (D[i],) for i in range(3)] + [(0, 0, 0, 0, c)]
    elif gid == 3:
        for B in F["W(F4)"]:
            for a, b in _bits(2):
                yield [(1, a, b, a, b)] + [(0,) + B[i] for i in range(4)]
    elif gid == 4:
        for A in F["GL2(Z3)"]:
            for B in F["D6"]:
                for a, b in _bits(2, 3):
                    yield [A[0] + (a, a), A[1] + (b, b), (0, 0) + B[0], (0, 0) + B[1]]
    elif gid == 5:
        for A in F["Sp4(Z2)"]:
            k = kappa(A)
            for r in _bits(4):
                for e in range(2):
                    for c in (1, -1):
                        yield [(1,) + r + (e,)] + [(0,) + A[i] + (k[i],) for i in range(4)] + [(0,) * 5 + (c,)]
    elif gid == 6:
        for A in F["GL2(Z2)"]:
            for B in F["signed-perm2"]:
                for a, b, c, d, e, f in _bits(6):
                    yield [(1, a, b, c, d), (0,) + A[0] + (e, e), (0,) + A[1] + (f, f), (0, 0, 0) + B[0], (0, 0, 0) + B[1]]
    else:
        raise ValueError(f"unknown grading id {gid}")


def claimed_order_formula(gid: int) -> tuple[int, str]:
    """The order as a product of enumerated factor orders, with the factorization."""
    F = {k: len(v) for k, v in factor_groups().items()}
    table = {
        1: ([64, F["GL3(Z2)"], F["D3"]], "2^6 * |GL3(Z2)| * |D3|"),
        2: ([16, F["GL3(Z2)"], 2], "2^4 * |GL3(Z2)| * 2"),
        3: ([4, F["W(F4)"]], "2^2 * |W(F4)|"),
        4: ([9, F["GL2(Z3)"], F["D6"]], "3^2 * |GL2(Z3)| * |D6|"),
        5: ([F["Sp4(Z2)"], 2, 32], "|Sp4(Z2)| * 2 * 2^5"),
        6: ([16, 4, F["GL2(Z2)"], F["signed-perm2"]], "2^4 * 2^2 * |GL2(Z2)| * |<s1, s2, -1>|"),
    }
    factors, text = table[gid]
    out = 1
    for x in factors:
        out *= x
    return out, text


def claimed_generators(gid: int) -> list[GroupAutMatrix]:
    """Generators of the claimed set: factor generators and unit translations."""
    sig = SIGNATURES[gid]
    n, a = sig.rank, sig.ntorsion
    out = []

    def unit(i, j, base=None):
        rows = [list(r) for r in (base or _ident(n))]
        rows[i][j] = 1
        return GroupAutMatrix(sig, rows)

    def block(A=None, B=None, at=0):
        rows = [list(r) for r in _ident(n)]
        for M, off in ((A, at), (B, a)):
            if M is not None:
                for i, r in enumerate(M):
                    rows[off + i][off : off + len(r)] = list(r)
        return GroupAutMatrix(sig, rows)

    if gid == 1:
        out += [block(A=g) for g in GL3_Z2_GENS] + [block(B=g) for g in (TAU1, TAU2)]
        out += [unit(i, 3 + j) for i in range(3) for j in range(2)]
    elif gid == 2:
        out += [block(A=g, at=1) for g in GL3_Z2_GENS] + [block(B=((-1,),))]
        out += [unit(i, 4) for i in range(4)]
    elif gid == 3:
        out += [block(B=g) for g in F4_GENERATORS]
        out += [GroupAutMatrix(sig, [(1, 1, 0, 1, 0)] + list(_ident(5)[1:])), GroupAutMatrix(sig, [(1, 0, 1, 0, 1)] + list(_ident(5)[1:]))]
    elif gid == 4:
        out += [block(A=g) for g in GL2_Z3_GENS] + [block(B=g) for g in (SIGMA_D6, TAU_D6)]
        for i in range(2):
            rows = [list(r) for r in _ident(4)]
            rows[i][2] = rows[i][3] = 1
            out.append(GroupAutMatrix(sig, rows))
    elif gid == 5:
        for i in range(1, 7):
            for j in range(i + 1, 7):
                X = transposition_image(i, j)
                k = kappa(X)
                out.append(GroupAutMatrix(sig, [(1, 0, 0, 0, 0, 0)] + [(0,) + X[r] + (k[r],) for r in range(4)] + [(0,) * 5 + (1,)]))
        out += [unit(0, j) for j in range(1, 6)] + [block(B=((-1,),))]
    elif gid == 6:
        out += [block(A=g, at=1) for g in GL2_Z2_GENS] + [block(B=g) for g in (SWAP2, REFLECT2, MINUS2)]
        out += [unit(0, j) for j in range(1, 5)]
        for i in (1, 2):
            rows = [list(r) for r in _ident(5)]
            rows[i][3] = rows[i][4] = 1
            out.append(GroupAutMatrix(sig, rows))
    return out


_CLAIMED: dict = {}


def claimed_weyl(gid: int) -> FiniteMatrixGroup:
    """The proposition's set, enumerated, and certified to equal the group its generators span."""
    if gid in _CLAIMED:
        return _CLAIMED[gid]
    sig = SIGNATURES[gid]
    rows = np.array(list(_claimed_rows(gid)), dtype=np.int64)
    keys = _keys(rows)
    if len(keys) != len(rows):
        raise VerificationError("the parametrization of the claimed set is not injective")
    gens = claimed_generators(gid)
    G = closure(gens, within=keys)
    if G.keys != keys:
        raise VerificationError(f"claimed set has {len(keys)} elements but its generators span {len(G)}")
    out = FiniteMatrixGroup(sig, keys, gens)
    _CLAIMED[gid] = out
    return out


# ---------------------------------------------------------------- realized generators

def exp_ad(algebra, x) -> Matrix:
    """exp(ad x) for ad-nilpotent x, in the algebra's field."""
    F = algebra.field
    X = algebra.ad(x)
    n = algebra.dim
    total = term = Matrix.identity(n, F)
    for k in range(1, n + 1):
        term = (term @ X).scale(F.conv(Fraction(1, k)))
        if not any(term.rows):
            return total
        total = total + term
    raise VerificationError("ad x is not nilpotent")


def root_reflection(gr: GradedDecomposition, key: tuple) -> Matrix | None:
    """exp(ad e) exp(-ad f) exp(ad e) for e spanning L_key, f in L_{-key} with [[e, f], e] = 2e.

    Returns None when L_{-key} holds no partner f.
    """
    A, sig, F = gr.algebra, gr.signature, gr.field
    comp = gr.components.get(key)
    if comp is None or comp.dim != 1:
        raise ValueError(f"{key} is not a one-dimensional component")
    opp = gr.components.get(sig.neg(key))
    if opp is None:
        return None
    e = comp.basis[0]
    k = next(iter(e))
    for f in opp.basis:
        he = A.bracket(A.bracket(e, f), e)
        if not he or k not in he:
            continue
        lam = F.mul(he[k], F.inv(e[k]))
        if vscale(e, lam, F) != he:
            continue
        f2 = vscale(f, F.mul(F.conv(-2), F.inv(lam)), F)
        ee = exp_ad(A, e)
        return ee @ exp_ad(A, f2) @ ee
    return None


def reflection_keys(gr: GradedDecomposition) -> list:
    """One-dimensional components with a nonzero free part (root-like degrees)."""
    a = gr.signature.ntorsion
    return [k for k in gr.support if gr.components[k].dim == 1 and any(k[a:])]


class Realized:
    """An element of the Weyl group together with the automorphism that produces it."""

    __slots__ = ("name", "matrix", "realization", "kind", "automorphism")

    def __init__(self, name: str, matrix: GroupAutMatrix, realization: str, kind: str, automorphism: Matrix | None = None):
        self.name, self.matrix, self.realization, self.kind = name, matrix, realization, kind
        self.automorphism = automorphism

    def to_json(self) -> dict:
        return {"name": self.name, "matrix": self.matrix.to_json(), "realization": self.realization, "kind": self.kind}

    def __repr__(self):
        return f"Realized({self.name}, {self.matrix.rows}, {self.realization}, {self.kind})"


def _mat3_perm(sigma: dict):
    """Permutation matrix sending e_j to e_sigma(j) (1-based labels), as a Mat3 grid."""
    from .cyclotomic import ONE, ZERO

    return [[ONE if sigma.get(j + 1, j + 1) == i + 1 else ZERO for j in range(3)] for i in range(3)]


def _mat3_transpose(J) -> Matrix:
    from .cyclotomic import ONE
    from .jordan import mat3_to_vector, vector_to_mat3

    cols = []
    for j in range(J.dim):
        X = vector_to_mat3({j: ONE})
        cols.append(mat3_to_vector([[X[b][a] for b in range(3)] for a in range(3)]))
    return Matrix.from_columns(cols, J.dim)


def _named_automorphisms(gid: int, realization: str, M) -> list[tuple[str, Matrix]]:
    """Explicit automorphisms built in the model that realizes the grading."""
    from . import composition as comp
    from . import jordan as jor
    from .cyclotomic import I, OMEGA, ONE, ZERO
    from .models import parse_cycles

    out = []
    if realization == "tits":
        C, J = M.ingredients["C"], M.ingredients["J"]
        w1, w2, w3 = comp.z2cube_elements(C)
        if gid == 1:
            out.append(("oct:(w1,w2,w3)->(w2,w3,w1)", M.aut("extend_C", phi=comp.z2cube_relabel(C, (w2, w3, w1)))))
            out.append(("oct:w1->i w1w2", M.aut("extend_C", phi=comp.z2cube_relabel(C, (vscale(C.mul(w1, w2), I), w2, w3)))))
            for cyc in ("(1,2,3)", "(1,2)"):
                g = _mat3_perm(parse_cycles(cyc))
                out.append((f"mat3:conj{cyc}", M.aut("extend_J", psi=jor.conjugation_automorphism(J, g))))
        elif gid == 4:
            F = [[OMEGA ** (j * k) for k in range(3)] for j in range(3)]
            D = [[ONE, ZERO, ZERO], [ZERO, ONE, ZERO], [ZERO, ZERO, OMEGA]]
            out.append(("mat3:conj(fourier)", M.aut("extend_J", psi=jor.conjugation_automorphism(J, F))))
            out.append(("mat3:conj(diag(1,1,w))", M.aut("extend_J", psi=jor.conjugation_automorphism(J, D))))
            out.append(("mat3:transpose", M.aut("extend_J", psi=_mat3_transpose(J))))
            for name, mapping in OCTONION_RELABELS.items():
                out.append((f"oct:{name}", M.aut("extend_C", phi=comp.relabel_basis(C, mapping))))
    elif realization == "a1a5":
        for cyc in ("(1,4)(3,6)", "(2,5)(3,6)"):
            out.append((f"perm{cyc}", M.aut("perm", sigma=cyc)))
    elif realization == "adams":
        P = Matrix.from_dense([[ZERO, ONE, ZERO], [ZERO, ZERO, ONE], [ONE, ZERO, ZERO]])
        out.append(("Psi(cycle)", M.aut("Psi", f=P)))
    elif realization == "elduque":
        S = M.ingredients["S"]
        C = S.hurwitz
        w1, w2, w3 = comp.z2cube_elements(C)
        if gid == 2:
            out.append(("pair:(w1,w2,w3)->(w2,w3,w1)", M.aut("pair", f=comp.z2cube_relabel(C, (w2, w3, w1)))))
            out.append(("pair:w1->i w1w2", M.aut("pair", f=comp.z2cube_relabel(C, (vscale(C.mul(w1, w2), I), w2, w3)))))
            out.append(("Psi0", M.aut("Psi", i=0)))
        else:
            out += [(f"Psi{i}", M.aut("Psi", i=i)) for i in range(3)]
    elif realization == "five-grading":
        if gid == 5:
            out += [("phi1~", M.aut("phi1")), ("phi2~", M.aut("phi2")), ("reversal", M.aut("reversal"))]
            out += [(f"p({i},{j})~", M.aut("p", sigma=f"({i},{j})")) for i in range(1, 7) for j in range(i + 1, 7)]
        else:
            out += [("phi0~", M.aut("phi0")), ("phi1~", M.aut("phi1")), ("reversal", M.aut("reversal"))]
            out += [(f"p{c}~", M.aut("p", sigma=c)) for c in ("(4,5)", "(5,6)", "(1,2)")]
    return out


# signed relabelings of the split octonions normalizing the Cartan grading
OCTONION_RELABELS = {
    "rho": {"u1": (1, "u2"), "u2": (1, "u3"), "u3": (1, "u1"), "v1": (1, "v2"), "v2": (1, "v3"), "v3": (1, "v1")},
    "psi1": {"e1": (1, "e2"), "e2": (1, "e1"), "u1": (1, "v1"), "v1": (1, "u1"), "u2": (1, "v2"), "v2": (1, "u2"), "u3": (1, "v3"), "v3": (1, "u3")},
    "psi2": {"u1": (-1, "u1"), "v1": (-1, "v1"), "u2": (1, "u3"), "u3": (1, "u2"), "v2": (1, "v3"), "v3": (1, "v2")},
}


def realized_generators(gid: int, field=None, realization: str | None = None, reflections: bool = True) -> list[Realized]:
    """Induced matrices of explicit automorphisms and of root reflections of one realization.

    The matrices are in the coordinates of that realization's universal group.
    """
    from .exactlin import EXACT
    from .gradings import REALIZATIONS, build_gamma

    field = field or EXACT
    realization = realization or REALIZATIONS[gid][0]
    gr = build_gamma(gid, field, realization)
    M = gr.model
    out = [Realized(nm, induced_on_group(f, gr), realization, "explicit", f) for nm, f in _named_automorphisms(gid, realization, M)]
    if reflections:
        seen = set()
        for k in reflection_keys(gr):
            n = root_reflection(gr, k)
            if n is None:
                continue
            m = induced_on_group(n, gr)
            if m.key() not in seen:
                seen.add(m.key())
                out.append(Realized(f"reflection{list(k)}", m, realization, "reflection", n))
    return out


def prune_generators(gens: Sequence[Realized]) -> list[Realized]:
    """Greedy subsequence generating the same group (keeps order)."""
    if not gens:
        return []
    sig = gens[0].matrix.signature
    kept: list[Realized] = []
    current = FiniteMatrixGroup(sig, {GroupAutMatrix.identity(sig).key()}, [])
    for g in gens:
        if g.matrix not in current:
            kept.append(g)
            current = closure([x.matrix for x in kept])
    return kept


# ---------------------------------------------------------------- displayed matrices

def _eye_with(n: int, entries: dict) -> tuple:
    rows = [list(r) for r in _ident(n)]
    for (i, j), x in entries.items():
        rows[i][j] = x
    return tuple(tuple(r) for r in rows)


class Display:
    """A matrix printed for an explicit normalizer element.

    ``convention`` is "component" when the printed matrix is alpha_f
    (f(L_s) = L_{alpha_f(s)}) and "inverse" when it is alpha_f^{-1}, i.e. rows
    are exponents of f Q f^{-1} for the generators Q of the quasitorus.
    ``target`` names the automorphism (of this realization) the print refers to.
    """

    __slots__ = ("gid", "realization", "label", "target", "rows", "convention")

    def __init__(self, gid, realization, label, target, rows, convention="component"):
        self.gid, self.realization, self.label, self.target = gid, realization, label, target
        self.rows, self.convention = tuple(tuple(r) for r in rows), convention


_PSI_ROW = {0: (1, 0, 1, 0, 1), 1: (1, 1, 0, 1, 0), 2: (1, 1, 1, 1, 1)}

DISPLAYS = [
    Display(1, "a1a5", "I2 x p_(1,4)(3,6)", "perm(1,4)(3,6)", _eye_with(5, {(0, 3): 1})),
    Display(1, "a1a5", "I2 x p_(2,5)(3,6)", "perm(2,5)(3,6)", _eye_with(5, {(0, 4): 1})),
    Display(1, "tits", "E_ij -> E_s(i)s(j), s = (1,2,3)", "mat3:conj(1,2,3)", _eye_with(5, {(3, 3): 0, (3, 4): -1, (4, 3): 1, (4, 4): -1})),
    Display(1, "tits", "E_ij -> E_s(i)s(j), s = (1,2)", "mat3:conj(1,2)", _eye_with(5, {(3, 3): -1, (3, 4): 1})),
    Display(2, "elduque", "Psi_0", "Psi0", _eye_with(5, {(0, 4): 1})),
    # the printed Psi_i is the induced matrix of Psi_{i+1}; see the ledger
    Display(3, "elduque", "Psi_0 (printed)", "Psi1", (_PSI_ROW[0],) + _ident(5)[1:]),
    Display(3, "elduque", "Psi_1 (printed)", "Psi2", (_PSI_ROW[1],) + _ident(5)[1:]),
    Display(3, "elduque", "Psi_2 (printed)", "Psi0", (_PSI_ROW[2],) + _ident(5)[1:]),
    Display(4, "tits", "rho", "oct:rho", _eye_with(4, {(2, 2): -1, (2, 3): 1, (3, 2): -1, (3, 3): 0}), "inverse"),
    Display(4, "tits", "psi_1", "oct:psi1", _eye_with(4, {(2, 2): -1, (3, 3): -1})),
    Display(4, "tits", "psi_2", "oct:psi2", _eye_with(4, {(2, 3): -1, (3, 3): -1})),
    Display(4, "adams", "Psi(cyclic permutation)", "Psi(cycle)", ((1, 0, 1, 1), (0, 1, 0, 0), (0, 0, -1, 1), (0, 0, -1, 0)), "inverse"),
    Display(5, "five-grading", "phi_1~", "phi1~", _eye_with(6, {(0, 1): 1})),
    Display(5, "five-grading", "phi_2~", "phi2~", _eye_with(6, {(0, 5): 1})),
    Display(6, "five-grading", "phi_0~", "phi0~", _eye_with(5, {(0, 1): 1})),
    Display(6, "five-grading", "phi_1~", "phi1~", _eye_with(5, {(0, 3): 1})),
]


def check_displays(gid: int, field=None) -> list[dict]:
    """Compare each printed matrix with the computed one, under its stated convention."""
    from .exactlin import EXACT
    from .gradings import build_gamma

    field = field or EXACT
    out = []
    by_real: dict = {}
    for d in (d for d in DISPLAYS if d.gid == gid):
        if d.realization not in by_real:
            gr = build_gamma(gid, field, d.realization)
            by_real[d.realization] = (gr, dict(_named_automorphisms(gid, d.realization, gr.model)))
        gr, named = by_real[d.realization]
        f = named[d.target]
        m = induced_on_group(f, gr)
        shown = m if d.convention == "component" else m.inverse()
        entry = {
            "grading": gid,
            "realization": d.realization,
            "display": d.label,
            "automorphism": d.target,
            "convention": d.convention,
            "expected": [list(r) for r in d.rows],
            "computed": [list(r) for r in shown.rows],
            "ok": shown.rows == d.rows,
        }
        if not entry["ok"]:
            diff = [(i, j) for i in range(len(d.rows)) for j in range(len(d.rows)) if shown.rows[i][j] != d.rows[i][j]]
            entry["mismatch"] = [list(x) for x in diff]
        out.append(entry)
    return out


# ---------------------------------------------------------------- the sp(8) side of Gamma_6

def _m8(grid) -> Matrix:
    from .cyclotomic import scalar

    return Matrix.from_dense([[scalar(x) if isinstance(x, int) else x for x in r] for r in grid])


def _blockdiag(*blocks) -> list:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    pos = 0
    for b in blocks:
        for i, r in enumerate(b):
            for j, x in enumerate(r):
                out[pos + i][pos + j] = x
        pos += len(b)
    return out


PAULI1 = [[0, 1], [1, 0]]
PAULI2 = [[1, 0], [0, -1]]
PAULI3 = [[0, -1], [1, 0]]
_Z2 = [[0, 0], [0, 0]]
_I2 = [[1, 0], [0, 1]]


def sp8_form() -> Matrix:
    """The symplectic Gram matrix with sigma_3 blocks pairing coordinates (1,2)-(3,4) and (5,6)-(7,8)."""
    rows = []
    for bi in range(4):
        for r in range(2):
            row = []
            for bj in range(4):
                blk = PAULI3 if (bi, bj) in ((0, 1), (1, 0), (2, 3), (3, 2)) else _Z2
                row += blk[r]
            rows.append(row)
    return _m8(rows)


def sp8_tau(alpha, beta) -> Matrix:
    from .cyclotomic import scalar

    a, b = scalar(alpha), scalar(beta)
    return Matrix.diagonal([a, a, a.inv(), a.inv(), b, b, b.inv(), b.inv()])


def sp8_tau_prime(ea: int, eb: int) -> Matrix:
    """tau'_{a,b} := tau_{alpha,beta} with a = alpha beta, b = alpha/beta, at a = zeta^ea, b = zeta^eb (ea = eb mod 2)."""
    from .cyclotomic import ZETA

    if (ea - eb) % 2:
        raise ValueError("tau' needs exponents of equal parity in this sampling")
    return sp8_tau(ZETA ** ((ea + eb) // 2), ZETA ** ((ea - eb) // 2))


def sp8_elements() -> dict:
    """The named 8x8 matrices: quasitorus generators and the normalizer elements p1, p2, p3, ..."""
    from .cyclotomic import I

    p = [[1, 1], [1, -1]]  # p sigma_1 p^{-1} = sigma_2
    pp = [[1, 0], [0, I]]  # conjugates sigma_1 to a multiple of sigma_1 sigma_2
    ipauli1 = [[0, I], [I, 0]]
    return {
        "g1": _m8(_blockdiag(PAULI1, PAULI1, PAULI1, PAULI1)),
        "g2": _m8(_blockdiag(PAULI2, PAULI2, PAULI2, PAULI2)),
        "p1": _m8([[0] * 4 + list(r) for r in _ident(4)] + [list(r) + [0] * 4 for r in _ident(4)]),
        "p2": _m8(_blockdiag([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]], _ident(4))),
        "p3": _m8(_blockdiag(_ident(4), [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])),
        "diag(p,p,p,p)": _m8(_blockdiag(p, p, p, p)),
        "diag(p',p',p',p')": _m8(_blockdiag(pp, pp, pp, pp)),
        # the printed diag(I4, s1, s1) is anti-symplectic on the second half; i s1 fixes that, same action
        "psi": _m8(_blockdiag(_ident(4), ipauli1, ipauli1)),
    }


def similitude_factor(X: Matrix, C: Matrix | None = None):
    """lambda with X^t C X = lambda C, or None."""
    C = C or sp8_form()
    Y = X.transpose() @ C @ X
    lam = Y.entry(0, 3) * C.entry(0, 3).inv()
    return lam if Y == C.scale(lam) else None


_SP8_SAMPLES = ((1, 5), (2, 8), (7, 3))  # (alpha, beta) = (zeta^x, zeta^y); generic enough to pin the exponents


def sp8_torus_effect(X: Matrix) -> tuple | None:
    """The integer 2x2 matrix m with X tau'_{a,b} X^{-1} = tau'_{a^m11 b^m12, a^m21 b^m22} (up to the trivial -1)."""
    Xi = X.inverse()
    found = []
    for m in itertools.product((-1, 0, 1), repeat=4):
        ok = True
        for x, y in _SP8_SAMPLES:
            ea, eb = x + y, x - y
            lhs = X @ sp8_tau_prime(ea, eb) @ Xi
            rhs = sp8_tau_prime(m[0] * ea + m[1] * eb, m[2] * ea + m[3] * eb)
            if lhs != rhs and lhs != rhs.scale(-1):
                ok = False
                break
        if ok:
            found.append(((m[0], m[1]), (m[2], m[3])))
    if len(found) > 1:
        raise VerificationError("torus effect not determined by the samples")
    return found[0] if found else None


def sp8_torsion_effect(X: Matrix, g: Matrix) -> tuple | None:
    """(u1, u2, d1, d2) with X g X^{-1} = c g1^u1 g2^u2 tau'_{(-1)^d1, (-1)^d2} for a scalar c with c^4 = 1."""
    from .cyclotomic import I, ONE

    E = sp8_elements()
    lhs = X @ g @ X.inverse()
    hits = []
    for u1, u2, d1, d2 in itertools.product(range(2), repeat=4):
        rhs = E["g1"].power(u1) @ E["g2"].power(u2) @ sp8_tau_prime(18 * d1, 18 * d2)
        for c in (ONE, -ONE, I, -I):
            if lhs == rhs.scale(c):
                hits.append((u1, u2, d1, d2))
    # tau'_{-1,-1} = tau_{1,-1} and -1 act trivially only up to the centre; keep the unique reading
    hits = sorted(set(hits))
    if len(hits) != 1:
        return None if not hits else hits[0]
    return hits[0]


def sp8_effect(X: Matrix) -> GroupAutMatrix | None:
    """Effect of X^diamond on the coordinates (Theta, g1, g2, tau'_1, tau'_2); rows are exponents of X Q X^{-1}."""
    E = sp8_elements()
    m = sp8_torus_effect(X)
    t1, t2 = sp8_torsion_effect(X, E["g1"]), sp8_torsion_effect(X, E["g2"])
    if m is None or t1 is None or t2 is None:
        return None
    rows = [(1, 0, 0, 0, 0), (0,) + t1, (0,) + t2, (0, 0, 0) + m[0], (0, 0, 0) + m[1]]
    return GroupAutMatrix(SIGNATURES[6], rows)


SP8_EXPECTED_B = {"p1": PAULI2, "p2": [[0, -1], [-1, 0]], "p3": PAULI1}


def sp8_checks() -> list[dict]:
    """The 8x8 identities behind the restriction subgroup of W(Gamma_6)."""
    E = sp8_elements()
    out = []
    for nm, X in E.items():
        if nm in ("g1", "g2"):
            continue
        lam = similitude_factor(X)
        out.append({"name": f"{nm} is a similitude of the symplectic form", "expected": True, "computed": str(lam) if lam is not None else None, "ok": lam is not None})
    printed_psi = _m8(_blockdiag(_ident(4), PAULI1, PAULI1))
    out.append({"name": "diag(I4, s1, s1) is not a similitude (anti-symplectic on the second half)", "expected": None, "computed": similitude_factor(printed_psi),
                "ok": similitude_factor(printed_psi) is None})
    # displayed identities, read with primed right-hand sides
    readings = {
        "p1": lambda ea, eb: (ea, -eb),
        "p2": lambda ea, eb: (-eb, -ea),
        "p3": lambda ea, eb: (eb, ea),
    }
    for nm, rhs in readings.items():
        X = E[nm]
        ok_primed = ok_literal = True
        for x, y in _SP8_SAMPLES:
            ea, eb = x + y, x - y
            lhs = X @ sp8_tau_prime(ea, eb) @ X.inverse()
            ok_primed &= lhs == sp8_tau_prime(*rhs(ea, eb))
            # literal: tau (unprimed) with the same arguments, a = zeta^ea, b = zeta^eb
            from .cyclotomic import ZETA

            a2, b2 = rhs(ea, eb)
            ok_literal &= lhs == sp8_tau(ZETA**a2, ZETA**b2)
        out.append({"name": f"{nm} tau' {nm}^-1 = tau'(image)", "expected": True, "computed": ok_primed, "ok": ok_primed, "unprimed_reading_holds": ok_literal})
    for nm, B in SP8_EXPECTED_B.items():
        eff = sp8_effect(E[nm])
        want = _eye_with(5, {(3, 3): B[0][0], (3, 4): B[0][1], (4, 3): B[1][0], (4, 4): B[1][1]})
        got = eff.rows if eff else None
        out.append({"name": f"effect of {nm}", "expected": [list(r) for r in want], "computed": [list(r) for r in got] if got else None, "ok": got == want})
    eff = sp8_effect(E["diag(p,p,p,p)"])
    out.append({"name": "diag(p,p,p,p) swaps g1 and g2", "expected": [[0, 1], [1, 0]], "computed": [list(r[1:3]) for r in eff.rows[1:3]] if eff else None,
                "ok": eff is not None and eff.rows[1][1:3] == (0, 1) and eff.rows[2][1:3] == (1, 0)})
    eff = sp8_effect(E["psi"])
    out.append({"name": "psi sends g2 to tau'_{-1,-1} g2", "expected": [0, 1, 1, 1], "computed": list(eff.rows[2][1:]) if eff else None,
                "ok": eff is not None and eff.rows[2][1:] == (0, 1, 1, 1) and eff.rows[1][1:] == (1, 0, 0, 0)})
    return out


def sp8_restriction_group() -> FiniteMatrixGroup:
    """Closure of the effects of the sp(8) normalizer elements (all commute with Theta)."""
    E = sp8_elements()
    gens = [sp8_effect(E[nm]) for nm in ("p1", "p2", "p3", "diag(p,p,p,p)", "diag(p',p',p',p')", "psi")]
    if any(g is None for g in gens):
        raise VerificationError("an sp(8) element does not normalize the quasitorus")
    return closure(gens)


# ---------------------------------------------------------------- obstructions

def _fixdim(f: Matrix, field) -> int:
    from .liealg import fixed_subspace

    return fixed_subspace(f.to_field(field)).dim


def _order(f: Matrix, field, bound: int = 6) -> int:
    from .liealg import order_of

    return order_of(f.to_field(field), bound)


def _typed(name: str, f: Matrix, field, order: int, fix: int | None = None, cls: str | None = None) -> dict:
    """Check order, fixed dimension and class of one automorphism."""
    from .liealg import AUT_TYPES

    k = _order(f, field)
    d = _fixdim(f, field)
    got_cls = AUT_TYPES.get((k, d))
    ok = k == order and (fix is None or d == fix) and (cls is None or got_cls == cls)
    return {"name": name, "expected": {"order": order, "fix": fix, "class": cls}, "computed": {"order": k, "fix": d, "class": got_cls}, "ok": ok}


def _obstructions_gamma2(field) -> list[dict]:
    from .models import build_model

    M = build_model("elduque")
    rho = M.aut("rho")
    F = [M.aut("F", k=k) for k in (1, 2, 3)]
    out = [_typed("rho", rho, field, 2, 52, "2C")]
    for bits in itertools.product(range(2), repeat=3):
        if not any(bits):
            continue
        f = Matrix.identity(M.dim)
        for b, Fk in zip(bits, F):
            if b:
                f = f @ Fk
        tag = "F1^%d F2^%d F3^%d" % bits
        out.append(_typed(tag, f, field, 2, 38, "2A"))
        out.append(_typed(f"rho {tag}", rho @ f, field, 2, 36, "2D"))
    return out


def _obstructions_gamma3(field) -> list[dict]:
    from .cyclotomic import scalar
    from .gradings import gamma3_degree_table, table_torus
    from .models import build_model

    M = build_model("elduque")
    rho = M.aut("rho")
    table = gamma3_degree_table(M)
    T = [table_torus(table, c, scalar(-1)) for c in range(4)]
    tri = M.blocks["tri_S"]
    out = []
    for b in itertools.product(range(2), repeat=4):
        t = Matrix.identity(M.dim)
        for bc, Tc in zip(b, T):
            if bc:
                t = t @ Tc
        fix_tri = sum(1 for k in tri if t.entry(k, k) == t.field.one)
        d = _fixdim(rho @ t, field)
        entry = {"name": f"fix(rho t), b = {b}", "expected": {"fix": fix_tri + 24}, "computed": {"fix": d, "fix_on_tri": fix_tri}, "ok": d == fix_tri + 24}
        if b[0] != b[2] or b[1] != b[3]:
            typed = _typed(f"rho t, b = {b}", rho @ t, field, 2, None, "2D")
            entry["expected"]["class"] = "2D"
            entry["computed"]["class"] = typed["computed"]["class"]
            entry["ok"] = entry["ok"] and typed["ok"]
        out.append(entry)
    return out


# eigenvalue of t_{a,b} on the derivations D_{x,y}, as exponents (n, m) of a^n b^m
DER_C_EIGEN = [
    (("u1", "v1"), (0, 0)), (("u2", "v2"), (0, 0)), (("e1", "u1"), (1, 0)), (("u2", "e1"), (0, 1)),
    (("e1", "u3"), (-1, -1)), (("e1", "v1"), (-1, 0)), (("e1", "v2"), (0, -1)), (("e1", "v3"), (1, 1)),
    (("u1", "v2"), (1, -1)), (("u1", "v3"), (2, 1)), (("u2", "v1"), (-1, 1)), (("u2", "v3"), (1, 2)),
    (("u3", "v1"), (-2, -1)), (("u3", "v2"), (-1, -2)),
]


def der_c_eigenvalue_check() -> list[dict]:
    """Conjugating D_{x,y} by the Cartan torus of the octonions multiplies it by the listed character."""
    from . import composition as comp
    from .cyclotomic import ONE, ZETA
    from .jordan import D_xy

    C = comp.split_octonions()
    a, b = ZETA, ZETA**5  # distinct enough to separate every exponent pair in the list
    t = comp.cartan_torus(C, a, b)
    ti = t.inverse()
    out = []
    for (x, y), (n, m) in DER_C_EIGEN:
        D = D_xy(C, {C.index(x): ONE}, {C.index(y): ONE})
        lam = a**n * b**m
        ok = (t @ D @ ti) == D.scale(lam) and any(D.rows)
        out.append({"name": f"t D_({x},{y}) t^-1", "expected": [n, m], "computed": ok, "ok": ok})
    return out


def _obstructions_gamma4(field) -> list[dict]:
    from .cyclotomic import OMEGA, ONE
    from .gradings import h_automorphisms, tits_torus
    from .models import build_model

    M = build_model("tits-oct-jordan")
    h1, h2 = h_automorphisms(M)
    roots = {0: ONE, 1: OMEGA, 2: OMEGA * OMEGA}
    out = []
    tori = {}
    for i, j in itertools.product(range(3), repeat=2):
        if (i, j) == (0, 0):
            continue
        t = tits_torus(M, roots[i], roots[j])
        kind = 1 if i == j else 2
        tori[(i, j)] = (t, kind)
        fix, cls = (24, "3C") if kind == 1 else (36, "3B")
        out.append(_typed(f"t(w^{i}, w^{j})", t, field, 3, fix, cls))
    for nm, h in (("h1", h1), ("h2", h2)):
        out.append(_typed(nm, h, field, 3, 30, "3D"))
    for i, j in itertools.product(range(3), repeat=2):
        if (i, j) != (0, 0):
            out.append(_typed(f"h1^{i} h2^{j}", h1.power(i) @ h2.power(j), field, 3, 30, "3D"))
    for nm, h in (("h1", h1), ("h2", h2)):
        for (i, j), (t, kind) in tori.items():
            out.append(_typed(f"{nm} t(w^{i}, w^{j})", h @ t, field, 3, None, "3D" if kind == 1 else "3C"))
    out += der_c_eigenvalue_check()
    return out


def _obstructions_gamma5(field) -> list[dict]:
    from .models import build_model, diag6

    M = build_model("five-grading")
    out = [_typed("theta", M.aut("theta"), field, 2, 36, "2D")]
    for eps in itertools.product((1, -1), repeat=6):
        minus = eps.count(-1)
        if minus == 0 or minus % 2:
            continue
        Y = M.aut("tilde", phi=diag6(*eps))
        fix, cls = (46, "2B") if minus == 4 else (38, "2A")
        out.append(_typed(f"Y~, Y = diag{eps}", Y, field, 2, fix, cls))
    return out


def _obstructions_gamma6(field) -> list[dict]:
    from .models import build_model

    out = sp8_checks()
    G = sp8_restriction_group()
    inside = G.keys <= claimed_weyl(6).keys
    out.append({"name": "sp(8) restriction subgroup", "expected": {"order": 192, "inside_claimed": True}, "computed": {"order": len(G), "inside_claimed": inside},
                "ok": len(G) == 192 and inside})
    M = build_model("five-grading")
    aut = lambda name, **kw: M.aut(name, **kw).to_field(field)
    theta = aut("theta")
    phi0, phi1 = aut("phi0"), aut("phi1")
    r0 = phi0 @ theta == theta @ aut("g1p") @ phi0
    r1 = phi1 @ theta == theta @ aut("psi", a=-1, ap=0) @ phi1
    out.append({"name": "phi0~ theta = theta g1'~ phi0~", "expected": True, "computed": r0, "ok": r0})
    out.append({"name": "phi1~ theta = theta psi~_{-1,0} phi1~", "expected": True, "computed": r1, "ok": r1})
    return out


def obstruction_checks(gid: int, field=None) -> list[dict]:
    """Every conjugacy-type fact the maximality arguments rely on, recomputed."""
    from .exactlin import EXACT

    field = field or EXACT
    table = {2: _obstructions_gamma2, 3: _obstructions_gamma3, 4: _obstructions_gamma4, 5: _obstructions_gamma5, 6: _obstructions_gamma6}
    if gid == 1:
        return []
    return table[gid](field)


# ---------------------------------------------------------------- the full certificate

MAXIMALITY_NOTE = (
    "closure of realized generators gives a lower bound; equality with the claimed set "
    "relies on the maximality arguments whose computational facts are the obstruction checks"
)


def structural_predicates(gid: int, matrices: Sequence[GroupAutMatrix]) -> dict:
    """Shape constraints on a list of Weyl group elements."""
    out = {"lower_left_zero": all(m.lower_left_zero() for m in matrices)}
    if gid == 5:
        out["torsion_column_is_kappa"] = all(
            tuple(m.rows[i][5] for i in range(1, 5)) == kappa([m.rows[i][1:5] for i in range(1, 5)]) for m in matrices
        )
    if gid == 3:
        out["first_row_abab"] = all(m.rows[0][1] == m.rows[0][3] and m.rows[0][2] == m.rows[0][4] for m in matrices)
    return out


def verify_weyl(gid: int, field=None, certify: bool = True, with_obstructions: bool = True) -> dict:
    """Displays, realized closure against the claimed set, membership, shapes and obstructions."""
    from .exactlin import EXACT
    from .gradings import REALIZATIONS, build_gamma

    field = field or EXACT
    claimed = claimed_weyl(gid)
    order, formula = claimed_order_formula(gid)
    displays = check_displays(gid, field)
    realization = REALIZATIONS[gid][0]
    gens = realized_generators(gid, field, realization)
    kept = prune_generators(gens)
    certified = {}
    if certify:
        alg = build_gamma(gid, field, realization).algebra
        for g in kept:
            certified[g.name] = alg.check_automorphism(g.automorphism)[0]
    G = closure([g.matrix for g in kept])
    members = {g.name: g.matrix in claimed for g in gens}
    # cross-realization displays are compared as abstract matrices; their membership is reported too
    for d in displays:
        if d["realization"] != realization:
            members[f"{d['realization']}:{d['automorphism']}"] = GroupAutMatrix(SIGNATURES[gid], d["computed"]) in claimed
    shapes = structural_predicates(gid, G.elements() if len(G) <= 5000 else [g.matrix for g in gens])
    shapes["claimed_set_closed"] = claimed.is_closed()
    obstructions = obstruction_checks(gid, field) if with_obstructions else []
    report = {
        "grading": gid,
        "signature": SIGNATURES[gid].describe(),
        "realization": realization,
        "claimed_order": order,
        "claimed_order_formula": formula,
        "enumerated_claimed_order": len(claimed),
        "closure_order": len(G),
        "closure_equals_claimed": G.keys == claimed.keys,
        "generators": [g.to_json() for g in kept],
        "generators_certified": certified,
        "all_realized_in_claimed": all(members.values()),
        "membership": members,
        "displays": displays,
        "structural": shapes,
        "obstructions": obstructions,
        "note": MAXIMALITY_NOTE,
    }
    report["checks"] = {
        "displays": all(d["ok"] for d in displays),
        "order": len(G) == order == len(claimed) and G.keys == claimed.keys,
        "membership": report["all_realized_in_claimed"],
        "certified": all(certified.values()),
        "structural": all(shapes.values()),
        "obstructions": all(o["ok"] for o in obstructions),
    }
    report["ok"] = all(report["checks"].values())
    return report
