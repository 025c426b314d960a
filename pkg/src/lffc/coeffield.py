"""Exact arithmetic in Q and in cyclotomic fields Q(zeta_m).

Elements are stored on the power basis 1, z, ..., z^(phi(m)-1) modulo the
m-th cyclotomic polynomial, with :class:`fractions.Fraction` coordinates.
Mixed arithmetic between Q(zeta_a) and Q(zeta_b) happens in Q(zeta_lcm(a, b)).
"""

from __future__ import annotations

import cmath
import enum
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Sequence

import mpmath

__all__ = [
    "CycloElem",
    "FieldEndo",
    "apply_endo",
    "complex_embed",
    "cyc_arith",
    "cyclotomic_polynomial",
    "euler_phi",
    "mp_embed",
]


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n: int) -> int:
    result = n
    for p in _factorize(n):
        result = result // p * (p - 1)
    return result


def _mobius(n: int) -> int:
    fac = _factorize(n)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the m-th cyclotomic polynomial.

    Computed recursively as (x^m - 1) / prod_{d | m, d < m} Phi_d(x).
    """
    if m < 1:
        raise ValueError(f"cyclotomic_polynomial needs m >= 1, got {m}")
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _int_exact_div(num, cyclotomic_polynomial(d))
    return tuple(num)


def _int_exact_div(num: list[int], den: Sequence[int]) -> list[int]:
    # den is monic
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quot[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    assert not any(num), "non-exact cyclotomic division"
    return quot


def _reduce(poly: Sequence[Fraction], m: int) -> tuple[Fraction, ...]:
    """Reduce a polynomial in zeta_m to canonical power-basis coordinates."""
    deg = euler_phi(m)
    if m == 1:
        return (sum(poly, Fraction(0)),)
    # zeta^m = 1 first, then long division by Phi_m
    buf = [Fraction(0)] * m
    for i, c in enumerate(poly):
        if c:
            buf[i % m] += c
    phi = cyclotomic_polynomial(m)
    for i in range(m - 1, deg - 1, -1):
        c = buf[i]
        if c:
            buf[i] = Fraction(0)
            for j in range(deg):
                if phi[j]:
                    buf[i - deg + j] -= c * phi[j]
    return tuple(buf[:deg])


def _ramanujan_sum(m: int, j: int) -> int:
    g = math.gcd(j, m)
    return _mobius(m // g) * euler_phi(m) // euler_phi(m // g)


class CycloElem:
    """An exact element of Q(zeta_m).

    >>> z = CycloElem.zeta(8)
    >>> z * z == CycloElem.zeta(4)
    True
    """

    __slots__ = ("m", "coords")

    def __init__(self, m: int, coords: Iterable = (0,)):
        if m < 1:
            raise ValueError(f"conductor must be positive, got {m}")
        self.m = m
        self.coords = _reduce([Fraction(c) for c in coords], m)

    @classmethod
    def _raw(cls, m: int, coords: tuple[Fraction, ...]) -> "CycloElem":
        obj = object.__new__(cls)
        obj.m = m
        obj.coords = coords
        return obj

    @classmethod
    def rational(cls, x) -> "CycloElem":
        return cls._raw(1, (Fraction(x),))

    @classmethod
    def zeta(cls, m: int, e: int = 1) -> "CycloElem":
        """The root of unity zeta_m^e (zeta_m = exp(2 pi i / m))."""
        poly = [Fraction(0)] * (e % m + 1)
        poly[e % m] = Fraction(1)
        return cls(m, poly)

    @classmethod
    def coerce(cls, x) -> "CycloElem":
        if isinstance(x, CycloElem):
            return x
        if isinstance(x, (int, Rational)):
            return cls.rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into a cyclotomic field")

    # -- structure -------------------------------------------------------

    def lift(self, m: int) -> "CycloElem":
        """Image of this element in Q(zeta_m); requires self.m | m."""
        if m == self.m:
            return self
        if m % self.m:
            raise ValueError(f"Q(zeta_{self.m}) does not embed in Q(zeta_{m})")
        step = m // self.m
        poly = [Fraction(0)] * (step * (len(self.coords) - 1) + 1)
        for j, c in enumerate(self.coords):
            poly[j * step] = c
        return CycloElem._raw(m, _reduce(poly, m))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    def trace(self) -> Fraction:
        """Normalised trace Tr_{Q(zeta_m)/Q}(self) / phi(m); independent of m."""
        total = sum((c * _ramanujan_sum(self.m, j) for j, c in enumerate(self.coords) if c), Fraction(0))
        return total / euler_phi(self.m)

    # -- arithmetic ------------------------------------------------------

    def _common(self, other) -> tuple["CycloElem", "CycloElem"]:
        other = CycloElem.coerce(other)
        if other.m == self.m:
            return self, other
        m = self.m * other.m // math.gcd(self.m, other.m)
        return self.lift(m), other.lift(m)

    def __add__(self, other):
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        return CycloElem._raw(a.m, tuple(x + y for x, y in zip(a.coords, b.coords)))

    __radd__ = __add__

    def __neg__(self):
        return CycloElem._raw(self.m, tuple(-x for x in self.coords))

    def __sub__(self, other):
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        return CycloElem._raw(a.m, tuple(x - y for x, y in zip(a.coords, b.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        if a.m == 1:
            return CycloElem._raw(1, (a.coords[0] * b.coords[0],))
        if b.is_rational():
            s = b.coords[0]
            return CycloElem._raw(a.m, tuple(x * s for x in a.coords))
        if a.is_rational():
            s = a.coords[0]
            return CycloElem._raw(a.m, tuple(x * s for x in b.coords))
        prod = [Fraction(0)] * (len(a.coords) + len(b.coords) - 1)
        for i, x in enumerate(a.coords):
            if x:
                for j, y in enumerate(b.coords):
                    if y:
                        prod[i + j] += x * y
        return CycloElem._raw(a.m, _reduce(prod, a.m))

    __rmul__ = __mul__

    def inverse(self) -> "CycloElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return CycloElem._raw(self.m, _reduce([1 / self.coords[0]], self.m))
        inv = _poly_inverse_mod(list(self.coords), [Fraction(c) for c in cyclotomic_polynomial(self.m)])
        return CycloElem._raw(self.m, _reduce(inv, self.m))

    def __truediv__(self, other):
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return CycloElem.coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = CycloElem._raw(self.m, _reduce([Fraction(1)], self.m))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conj(self) -> "CycloElem":
        """Complex conjugate: zeta_m -> zeta_m^(m-1)."""
        if self.m <= 2:
            return self
        poly = [Fraction(0)] * self.m
        for j, c in enumerate(self.coords):
            poly[(-j) % self.m] += c
        return CycloElem._raw(self.m, _reduce(poly, self.m))

    # -- comparison ------------------------------------------------------

    def __eq__(self, other):
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        return a.coords == b.coords

    def __hash__(self):
        return hash(self.trace())

    def __bool__(self):
        return not self.is_zero()

    # -- display and serialisation ---------------------------------------

    def __repr__(self):
        return f"CycloElem({self.m}, {[str(c) for c in self.coords]})"

    def __str__(self):
        if self.m == 1 or self.is_rational():
            return str(self.coords[0])
        terms = []
        for j in range(len(self.coords) - 1, -1, -1):
            c = self.coords[j]
            if not c:
                continue
            mono = "" if j == 0 else (f"zeta{self.m}" if j == 1 else f"zeta{self.m}^{j}")
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> dict:
        return {"m": self.m, "coords": [f"{c.numerator}/{c.denominator}" for c in self.coords]}

    @classmethod
    def from_json(cls, obj) -> "CycloElem":
        """Parse the {"m", "coords"} form; bare ints and "p/q" strings are rationals."""
        if isinstance(obj, dict):
            return cls(int(obj["m"]), [Fraction(c) for c in obj["coords"]])
        if isinstance(obj, bool):
            raise TypeError("booleans are not field elements")
        if isinstance(obj, (int, str)):
            return cls.rational(Fraction(obj))
        raise TypeError(f"cannot read a field element from {obj!r}")

    def __complex__(self):
        return complex_embed(self)


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = _trim(list(a))
    b = _trim(list(b))
    if len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for j, y in enumerate(b):
            a[shift + j] -= c * y
        _trim(a)
    return q, a


def _poly_sub_mul(a: list[Fraction], q: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = list(a) + [Fraction(0)] * max(0, len(q) + len(b) - 1 - len(a))
    for i, x in enumerate(q):
        if x:
            for j, y in enumerate(b):
                out[i + j] -= x * y
    return _trim(out)


def _poly_inverse_mod(a: list[Fraction], modulus: list[Fraction]) -> list[Fraction]:
    """Inverse of a modulo an irreducible modulus via the extended Euclidean algorithm."""
    r0, r1 = _trim(list(modulus)), _trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub_mul(s0, q, s1)
    if not r1:
        raise ZeroDivisionError("element is not invertible")
    c = r1[0]
    return [x / c for x in s1]


def cyc_arith(a, b, op: str) -> CycloElem:
    """Functional form of the four field operations ("add", "sub", "mul", "div")."""
    a, b = CycloElem.coerce(a), CycloElem.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


class FieldEndo(enum.Enum):
    """The sign endomorphism of a self-dual representation."""

    IDENTITY = "id"
    CONJUGATION = "cc"

    def __call__(self, a):
        return apply_endo(self, a)


def apply_endo(c: FieldEndo, a):
    if c is FieldEndo.IDENTITY:
        return a
    if isinstance(a, CycloElem):
        return a.conj()
    return a


def complex_embed(a) -> complex:
    """Value of a under zeta_m -> exp(2 pi i / m), in double precision."""
    a = CycloElem.coerce(a)
    z = 0j
    for j, c in enumerate(a.coords):
        if c:
            z += float(c) * cmath.exp(2j * cmath.pi * j / a.m)
    return z


def mp_embed(a) -> mpmath.mpc:
    """Same as complex_embed, at the current mpmath working precision."""
    a = CycloElem.coerce(a)
    z = mpmath.mpc(0)
    for j, c in enumerate(a.coords):
        if c:
            z += mpmath.mpf(c.numerator) / c.denominator * mpmath.expjpi(mpmath.mpf(2 * j) / a.m)
    return z
