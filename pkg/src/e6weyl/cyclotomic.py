"""Exact arithmetic in the cyclotomic field Q(z), z a primitive 36th root of unity.

Elements are stored as an integer numerator vector over the power basis
1, z, ..., z^11 together with a positive common denominator.  The minimal
polynomial is x^12 - x^6 + 1, so z^12 = z^6 - 1.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Iterable

CONDUCTOR = 36
DEGREE = 12
# coefficients of the cyclotomic polynomial, low degree first
PHI = (1, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 1)

_ZERO_NUM = (0,) * DEGREE


def _reduce_poly(c: list) -> list:
    # fold degrees >= 12 using z^12 = z^6 - 1
    for k in range(len(c) - 1, DEGREE - 1, -1):
        v = c[k]
        if v:
            c[k - 6] += v
            c[k - 12] -= v
    return c[:DEGREE]


class CycloScalar:
    """Immutable element of Q(z36)."""

    __slots__ = ("_n", "_d", "_h")

    def __init__(self, coeffs: Iterable = (0,)):
        coeffs = list(coeffs)
        if len(coeffs) > DEGREE:
            coeffs = _reduce_poly(list(coeffs))
        fr = [Fraction(c) for c in coeffs] + [Fraction(0)] * (DEGREE - len(coeffs))
        den = 1
        for f in fr:
            den = den * f.denominator // gcd(den, f.denominator)
        nums = [int(f * den) for f in fr]
        self._set(nums, den)

    def _set(self, nums, den):
        g = den
        for v in nums:
            if v:
                g = gcd(g, v)
                if g == 1:
                    break
        if g != 1:
            nums = [v // g for v in nums]
            den //= g
        self._n = tuple(nums)
        self._d = den
        self._h = None

    @classmethod
    def _raw(cls, nums, den: int) -> "CycloScalar":
        obj = object.__new__(cls)
        if den < 0:
            nums = [-v for v in nums]
            den = -den
        obj._set(nums, den)
        return obj

    @classmethod
    def rational(cls, q) -> "CycloScalar":
        q = Fraction(q)
        obj = object.__new__(cls)
        obj._n = (q.numerator,) + _ZERO_NUM[1:]
        obj._d = q.denominator
        obj._h = None
        return obj

    @property
    def coeffs(self) -> tuple:
        return tuple(Fraction(v, self._d) for v in self._n)

    def numerators(self) -> tuple:
        return self._n

    @property
    def denominator(self) -> int:
        return self._d

    def is_zero(self) -> bool:
        return self._n == _ZERO_NUM

    def is_rational(self) -> bool:
        return not any(self._n[1:])

    def __bool__(self) -> bool:
        return self._n != _ZERO_NUM

    def __eq__(self, other) -> bool:
        if isinstance(other, CycloScalar):
            return self._d == other._d and self._n == other._n
        if isinstance(other, (int, Fraction)):
            return self == CycloScalar.rational(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._h is None:
            if self.is_rational():
                self._h = hash(Fraction(self._n[0], self._d))
            else:
                self._h = hash((self._n, self._d))
        return self._h

    def __neg__(self) -> "CycloScalar":
        obj = object.__new__(CycloScalar)
        obj._n = tuple(-v for v in self._n)
        obj._d = self._d
        obj._h = None
        return obj

    def _coerce(self, other):
        if isinstance(other, CycloScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return CycloScalar.rational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d1, d2 = self._d, o._d
        if d1 == d2:
            return CycloScalar._raw([a + b for a, b in zip(self._n, o._n)], d1)
        return CycloScalar._raw([a * d2 + b * d1 for a, b in zip(self._n, o._n)], d1 * d2)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._n, o._n
        if not any(b[1:]):
            s = b[0]
            return CycloScalar._raw([v * s for v in a], self._d * o._d)
        if not any(a[1:]):
            s = a[0]
            return CycloScalar._raw([v * s for v in b], self._d * o._d)
        c = [0] * (2 * DEGREE - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        c[i + j] += x * y
        return CycloScalar._raw(_reduce_poly(c), self._d * o._d)

    __rmul__ = __mul__

    def inv(self) -> "CycloScalar":
        """Multiplicative inverse by the extended Euclidean algorithm against the cyclotomic polynomial."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(z36)")
        if self.is_rational():
            return CycloScalar.rational(Fraction(self._d, self._n[0]))
        # invariant: s*a = r (mod PHI)
        r0 = _poly_trim([Fraction(c) for c in PHI])
        r1 = _poly_trim(list(self.coeffs))
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or r1[0] != 0:
            q, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
            if len(r1) == 1 and r1[0] != 0:
                c = r1[0]
                return CycloScalar([x / c for x in s1])
        # r0 is the gcd, a nonzero constant since PHI is irreducible
        c = r0[0]
        return CycloScalar([x / c for x in s0])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, k: int) -> "CycloScalar":
        if k < 0:
            return self.inv() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def to_text(self) -> str:
        """Render as a polynomial in z, e.g. ``1/2*z^3 - 2*z^0``."""
        terms = []
        for k in range(DEGREE - 1, -1, -1):
            c = Fraction(self._n[k], self._d)
            if c:
                terms.append((c, k))
        if not terms:
            return "0"
        out = []
        for idx, (c, k) in enumerate(terms):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = f"{mag}*z^{k}"
            if idx == 0:
                out.append(("-" if sign == "-" else "") + body)
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"CycloScalar('{self.to_text()}')"

    @classmethod
    def from_text(cls, text: str) -> "CycloScalar":
        """Parse the output of :meth:`to_text`. Bare rationals and ``z`` without exponent are accepted."""
        s = text.replace(" ", "")
        if s in ("", "0"):
            return ZERO
        if s[0] not in "+-":
            s = "+" + s
        total = ZERO
        pos = 0
        for m in _TERM.finditer(s):
            if m.start() != pos or m.end() == m.start() + 1 and m.group(2) is None and m.group(3) is None:
                raise ValueError(f"cannot parse cyclotomic scalar: {text!r}")
            pos = m.end()
            sign, num, zpart, exp = m.group(1), m.group(2), m.group(3), m.group(4)
            c = Fraction(num) if num else Fraction(1)
            k = int(exp) if exp is not None else (1 if zpart else 0)
            term = root_of_unity(k) * (c if sign == "+" else -c)
            total = total + term
        if pos != len(s):
            raise ValueError(f"cannot parse cyclotomic scalar: {text!r}")
        return total


_TERM = re.compile(r"([+-])(\d+(?:/\d+)?)?(?:\*?(z)(?:\^(\d+))?)?")


def _poly_trim(p):
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
    return p


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return _poly_trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _poly_mul(a, b):
    c = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                c[i + j] += x * y
    return _poly_trim(c)


def _poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    lead = b[-1]
    while len(a) >= len(b) and not (len(a) == 1 and a[0] == 0):
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, y in enumerate(b):
            a[i + shift] -= c * y
        a = _poly_trim(a[:-1]) if len(a) > 1 else [Fraction(0)]
    return _poly_trim(q), _poly_trim(a)


ZERO = CycloScalar.rational(0)
ONE = CycloScalar.rational(1)


def scalar(x) -> CycloScalar:
    """Coerce an int, Fraction or CycloScalar."""
    if isinstance(x, CycloScalar):
        return x
    return CycloScalar.rational(x)


def root_of_unity(k: int) -> CycloScalar:
    """Return z36**k, k taken mod 36."""
    k %= CONDUCTOR
    c = [0] * CONDUCTOR
    c[k] = 1
    return CycloScalar._raw(_reduce_poly(c), 1)


ZETA = root_of_unity(1)
I = root_of_unity(9)  # i^2 = -1
OMEGA = root_of_unity(12)  # primitive cube root of 1
ZETA12 = root_of_unity(3)
XI = root_of_unity(4)  # primitive ninth root of 1


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primitive_root_36(p: int) -> int:
    """Smallest residue of multiplicative order exactly 36 mod p (p prime, p = 1 mod 36)."""
    if not is_prime(p) or p % CONDUCTOR != 1:
        raise ValueError(f"{p} is not a prime congruent to 1 mod 36")
    for g in range(2, p):
        r = pow(g, (p - 1) // CONDUCTOR, p)
        if pow(r, 18, p) != 1 and pow(r, 12, p) != 1:
            return r
    raise ValueError(f"no element of order 36 mod {p}")


def default_primes(count: int = 3, start: int = 1 << 30) -> list[int]:
    """The first `count` primes p = 1 mod 36 at or above `start`."""
    out = []
    p = start - start % CONDUCTOR + 1
    while len(out) < count:
        if p >= start and is_prime(p):
            out.append(p)
        p += CONDUCTOR
    return out


def modular_image(a: CycloScalar, p: int, r: int) -> int:
    """Image of `a` under the ring map Z[1/den][z] -> F_p sending z to r."""
    if a._d % p == 0:
        raise ZeroDivisionError(f"denominator {a._d} divisible by {p}; choose another prime")
    acc = 0
    rk = 1
    for v in a._n:
        if v:
            acc += v * rk
        rk = rk * r % p
    return acc * pow(a._d, -1, p) % p
