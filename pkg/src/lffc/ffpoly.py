"""Finite fields, polynomials over F_q and places of F_q(t).

Elements of F_{p^k} are encoded as integers: the residue c_0 + c_1 w + ...
+ c_{k-1} w^{k-1} (w a root of the defining modulus) is stored as
c_0 + c_1 p + ... + c_{k-1} p^{k-1}.  Prime subfield elements are plain ints
below p in every field of characteristic p.

Scalar arithmetic in non-prime fields goes through Zech logarithm tables,
and every field also has numpy vector operations used by the exhaustive
point counts.
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "Extension",
    "extension",
    "FqElem",
    "FqField",
    "FqPoly",
    "GF",
    "NotAGeneratorError",
    "ParseError",
    "Place",
    "RatFunc",
    "is_irreducible",
    "is_prime",
    "monic_irreducibles",
    "irreducibles_by_testing",
    "parse_poly",
    "parse_prime_power",
    "parse_ratfunc",
    "places_up_to",
    "prime_factors",
    "quadratic_character",
    "unit_discrete_log",
]


class ParseError(ValueError):
    pass


class NotAGeneratorError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def parse_prime_power(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p^k, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = _prime_divisors(q)[0]
    k = 0
    n = q
    while n % p == 0:
        n //= p
        k += 1
    if n != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, k


# -- finite fields -----------------------------------------------------------


class FqField:
    """The finite field F_{p^k} on a polynomial basis.

    With no modulus given, the defining polynomial is the first monic
    irreducible of degree k over F_p in lexicographic order.
    """

    def __init__(self, p: int, k: int = 1, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if k < 1:
            raise ValueError(f"extension degree must be positive, got {k}")
        self.p = p
        self.k = k
        self.order = p**k
        if k == 1:
            self.modulus = (0, 1)
        elif modulus is None:
            self.modulus = next(_irreducibles_in_order(GF(p), k)).coeffs
        else:
            mod = tuple(int(c) % p for c in modulus)
            if len(mod) != k + 1 or mod[-1] != 1:
                raise ValueError("modulus must be monic of degree k")
            if not is_irreducible(FqPoly(GF(p), mod)):
                raise ValueError("modulus is reducible")
            self.modulus = mod

    def __repr__(self):
        return f"GF({self.order})" if self.k == 1 else f"GF({self.p}^{self.k})"

    def __eq__(self, other):
        return isinstance(other, FqField) and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __reduce__(self):
        return (FqField, (self.p, self.k, self.modulus if self.k > 1 else None))

    def __call__(self, value) -> "FqElem":
        return FqElem(self, self.coerce(value))

    # -- encodings

    def coerce(self, value) -> int:
        if isinstance(value, FqElem):
            if value.field != self:
                raise ValueError("element of a different field")
            return value.rep
        if isinstance(value, int):
            return value % self.p
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_digits(self, ds: Sequence[int]) -> int:
        a = 0
        for d in reversed(ds):
            a = a * self.p + d % self.p
        return a

    @property
    def w(self) -> int:
        """Encoding of the generator w of F_{p^k} over F_p."""
        if self.k == 1:
            raise ValueError("prime fields have no generator symbol w")
        return self.p

    def elem_str(self, a: int) -> str:
        if self.k == 1:
            return str(a)
        terms = []
        for j, c in reversed(list(enumerate(self.digits(a)))):
            if not c:
                continue
            mono = "" if j == 0 else ("w" if j == 1 else f"w^{j}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms) if terms else "0"

    # -- tables

    def _mul_digits(self, a: list[int], b: list[int]) -> list[int]:
        p, k, mod = self.p, self.k, self.modulus
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        for i in range(2 * k - 2, k - 1, -1):
            c = prod[i] % p
            if c:
                for j in range(k):
                    prod[i - k + j] -= c * mod[j]
        return [c % p for c in prod[:k]]

    @cached_property
    def _tables(self):
        p, q = self.p, self.order
        if self.k == 1:
            g = _prime_field_generator(p)
            exp = np.empty(q - 1, dtype=np.int64)
            x = 1
            for n in range(q - 1):
                exp[n] = x
                x = x * g % p
        else:
            g = self._find_generator()
            gd = self.digits(g)
            exp = np.empty(q - 1, dtype=np.int64)
            cur = [1] + [0] * (self.k - 1)
            for n in range(q - 1):
                exp[n] = self.from_digits(cur)
                cur = self._mul_digits(cur, gd)
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1, dtype=np.int64)
        plus1 = exp - exp % p + (exp % p + 1) % p
        zech = np.where(plus1 == 0, -1, log[plus1])
        return g, exp, log, zech

    def _find_generator(self) -> int:
        n = self.order - 1
        primes = _prime_divisors(n)
        for cand in range(2, self.order):
            cd = self.digits(cand)
            if all(self._pow_digits(cd, n // r) != [1] + [0] * (self.k - 1) for r in primes):
                return cand
        raise RuntimeError("no generator found")  # pragma: no cover

    def _pow_digits(self, a: list[int], e: int) -> list[int]:
        result = [1] + [0] * (self.k - 1)
        while e:
            if e & 1:
                result = self._mul_digits(result, a)
            a = self._mul_digits(a, a)
            e >>= 1
        return result

    @cached_property
    def _lists(self):
        g, exp, log, zech = self._tables
        return exp.tolist(), log.tolist(), zech.tolist()

    @property
    def generator(self) -> int:
        """A generator of the multiplicative group."""
        return self._tables[0]

    def log(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("log of zero")
        return self._lists[1][a]

    def exp(self, n: int) -> int:
        return self._lists[0][n % (self.order - 1)]

    # -- scalar arithmetic

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if a == 0:
            return b
        if b == 0:
            return a
        exp, log, zech = self._lists
        la = log[a]
        z = zech[(log[b] - la) % (self.order - 1)]
        if z < 0:
            return 0
        return exp[(la + z) % (self.order - 1)]

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        return self.from_digits([-d for d in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        exp, log, _ = self._lists
        return exp[(log[a] + log[b]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"inverse of zero in {self}")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        exp, log, _ = self._lists
        return exp[-log[a] % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if self.k == 1:
            if e < 0:
                a, e = self.inv(a), -e
            return pow(a, e, self.p)
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        exp, log, _ = self._lists
        return exp[log[a] * e % (self.order - 1)]

    def chi(self, a: int) -> int:
        """Quadratic character: a^((q-1)/2) read as +1/-1, and 0 at zero."""
        if self.p == 2:
            raise ValueError("quadratic character is undefined in characteristic 2")
        if a == 0:
            return 0
        if self.k == 1:
            return 1 if pow(a, (self.p - 1) // 2, self.p) == 1 else -1
        return -1 if self._lists[1][a] & 1 else 1

    def is_square(self, a: int) -> bool:
        return a == 0 or self.chi(a) == 1

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    # -- vector arithmetic over numpy int64 arrays

    def vadd(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        a, b = np.broadcast_arrays(a, b)
        _, exp, log, zech = self._tables
        la = log[a]
        z = zech[(log[b] - la) % (self.order - 1)]
        out = np.where(z < 0, 0, exp[(la + np.maximum(z, 0)) % (self.order - 1)])
        out = np.where(a == 0, b, out)
        return np.where(b == 0, a, out)

    def vneg(self, a):
        if self.k == 1:
            return -np.asarray(a) % self.p
        a = np.asarray(a, dtype=np.int64)
        out = np.zeros_like(a)
        scale = 1
        for _ in range(self.k):
            out += (-(a // scale % self.p) % self.p) * scale
            scale *= self.p
        return out

    def vmul(self, a, b):
        if self.k == 1:
            return np.asarray(a) * np.asarray(b) % self.p
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        _, exp, log, _ = self._tables
        out = exp[(log[a] + log[b]) % (self.order - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def vchi(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            raise ValueError("quadratic character is undefined in characteristic 2")
        _, _, log, _ = self._tables
        return np.where(a == 0, 0, 1 - 2 * (log[a] & 1))

    def vpow(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        _, exp, log, _ = self._tables
        out = exp[(log[a] * e) % (self.order - 1)]
        if e == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, out)

    def all_elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)


def _prime_field_generator(p: int) -> int:
    if p == 2:
        return 1
    primes = _prime_divisors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in primes):
            return g
    raise RuntimeError("no generator")  # pragma: no cover


@lru_cache(maxsize=None)
def GF(q: int) -> FqField:
    """The canonical field with q elements."""
    p, k = parse_prime_power(q)
    return FqField(p, k)


@dataclass(frozen=True)
class FqElem:
    field: FqField
    rep: int

    def _other(self, other) -> int:
        return self.field.coerce(other)

    def __add__(self, other):
        return FqElem(self.field, self.field.add(self.rep, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FqElem(self.field, self.field.sub(self.rep, self._other(other)))

    def __rsub__(self, other):
        return FqElem(self.field, self.field.sub(self._other(other), self.rep))

    def __mul__(self, other):
        return FqElem(self.field, self.field.mul(self.rep, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FqElem(self.field, self.field.div(self.rep, self._other(other)))

    def __neg__(self):
        return FqElem(self.field, self.field.neg(self.rep))

    def __pow__(self, e: int):
        return FqElem(self.field, self.field.pow(self.rep, e))

    def __bool__(self):
        return self.rep != 0

    def __str__(self):
        return self.field.elem_str(self.rep)


def quadratic_character(a: FqElem) -> int:
    """+1 on nonzero squares, -1 on non-squares, 0 at zero."""
    return a.field.chi(a.rep)


# -- polynomials ---------------------------------------------------------------


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


class FqPoly:
    """A polynomial over F_q with coefficients stored low to high."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FqField, coeffs: Iterable[int] = ()):
        # coefficients are element encodings; plain integers are reduced mod p
        # only in prime fields, where the two readings agree
        cs = []
        for c in coeffs:
            if isinstance(c, FqElem):
                c = field.coerce(c)
            elif field.k == 1:
                c = int(c) % field.p
            elif not 0 <= c < field.order:
                raise ValueError(f"{c} is not an element encoding of {field}")
            cs.append(int(c))
        self.field = field
        self.coeffs = tuple(_trim(cs))

    @classmethod
    def _raw(cls, field: FqField, coeffs: list[int]) -> "FqPoly":
        obj = object.__new__(cls)
        obj.field = field
        obj.coeffs = tuple(_trim(coeffs))
        return obj

    @classmethod
    def t(cls, field: FqField) -> "FqPoly":
        return cls._raw(field, [0, 1])

    @classmethod
    def const(cls, field: FqField, c: int) -> "FqPoly":
        return cls._raw(field, [c])

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other):
        if isinstance(other, int):
            other = FqPoly.const(self.field, self.field.coerce(other))
        if not isinstance(other, FqPoly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def sort_key(self) -> tuple:
        """Degree first, then coefficients from the top down."""
        return (self.degree(), tuple(reversed(self.coeffs)))

    def __lt__(self, other: "FqPoly"):
        return self.sort_key() < other.sort_key()

    def _lift(self, other) -> "FqPoly":
        if isinstance(other, FqPoly):
            return other
        return FqPoly.const(self.field, self.field.coerce(other))

    def __add__(self, other):
        other = self._lift(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        out = [F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]
        return FqPoly._raw(F, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return FqPoly._raw(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return FqPoly._raw(F, [])
        if F.k == 1:
            out = [0] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] += x * y
            return FqPoly._raw(F, [c % F.p for c in out])
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = F.add(out[i + j], F.mul(x, y))
        return FqPoly._raw(F, out)

    __rmul__ = __mul__

    def scale(self, c: int) -> "FqPoly":
        F = self.field
        return FqPoly._raw(F, [F.mul(c, x) for x in self.coeffs])

    def monic(self) -> "FqPoly":
        if not self.coeffs:
            return self
        return self.scale(self.field.inv(self.lc()))

    def divmod(self, other: "FqPoly") -> tuple["FqPoly", "FqPoly"]:
        other = self._lift(other)
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        r = list(self.coeffs)
        db = other.degree()
        if len(r) - 1 < db:
            return FqPoly._raw(F, []), self
        inv_lead = F.inv(other.lc())
        q = [0] * (len(r) - db)
        b = other.coeffs
        if F.k == 1:
            p = F.p
            for i in range(len(r) - 1, db - 1, -1):
                c = r[i] % p * inv_lead % p
                if c:
                    q[i - db] = c
                    for j in range(db + 1):
                        r[i - db + j] -= c * b[j]
            return FqPoly._raw(F, q), FqPoly._raw(F, [x % p for x in r[:db]])
        for i in range(len(r) - 1, db - 1, -1):
            c = F.mul(r[i], inv_lead)
            if c:
                q[i - db] = c
                for j in range(db + 1):
                    r[i - db + j] = F.sub(r[i - db + j], F.mul(c, b[j]))
        return FqPoly._raw(F, q), FqPoly._raw(F, r[:db])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def powmod(self, e: int, modulus: "FqPoly") -> "FqPoly":
        result = FqPoly.const(self.field, 1) % modulus
        base = self % modulus
        while e:
            if e & 1:
                result = result * base % modulus
            base = base * base % modulus
            e >>= 1
        return result

    def __pow__(self, e: int):
        result = FqPoly.const(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def derivative(self) -> "FqPoly":
        F = self.field
        return FqPoly._raw(F, [F.mul(i % F.p, c) for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def valuation(self, pi: "FqPoly") -> int:
        """Multiplicity of the irreducible pi in self (infinite for zero)."""
        if not self.coeffs:
            return math.inf
        v = 0
        f = self
        while True:
            q, r = f.divmod(pi)
            if r:
                return v
            f = q
            v += 1

    def reverse(self, n: int | None = None) -> "FqPoly":
        """t^n * self(1/t), by default with n = degree."""
        n = self.degree() if n is None else n
        out = [0] * (n + 1)
        for i, c in enumerate(self.coeffs):
            out[n - i] = c
        return FqPoly._raw(self.field, out)

    def __str__(self):
        return poly_str(self)

    def __repr__(self):
        return f"FqPoly({self.field!r}, {poly_str(self)!r})"


def poly_str(f: FqPoly, var: str = "t") -> str:
    F = f.field
    if not f.coeffs:
        return "0"
    terms = []
    for j in range(f.degree(), -1, -1):
        c = f.coeffs[j]
        if not c:
            continue
        mono = "" if j == 0 else (var if j == 1 else f"{var}^{j}")
        cs = F.elem_str(c)
        if F.k > 1 and len(cs.split(" + ")) > 1:
            cs = f"({cs})"
        if not mono:
            terms.append(cs)
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{cs}*{mono}")
    return " + ".join(terms)


def poly_gcd(a: FqPoly, b: FqPoly) -> FqPoly:
    while b.coeffs:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: FqPoly, b: FqPoly) -> tuple[FqPoly, FqPoly, FqPoly]:
    """(g, s, t) with s*a + t*b = g monic."""
    F = a.field
    r0, r1 = a, b
    s0, s1 = FqPoly.const(F, 1), FqPoly._raw(F, [])
    t0, t1 = FqPoly._raw(F, []), FqPoly.const(F, 1)
    while r1.coeffs:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0.coeffs:
        return r0, s0, t0
    inv = F.inv(r0.lc())
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def inverse_mod(a: FqPoly, modulus: FqPoly) -> FqPoly:
    g, s, _ = poly_xgcd(a % modulus, modulus)
    if g.degree() != 0:
        raise ZeroDivisionError("not invertible modulo the given polynomial")
    return s % modulus


def _frobenius_images(f: FqPoly) -> list[FqPoly]:
    """t^(i q) mod f for 0 <= i < deg f, the matrix of x -> x^q on F_q[t]/f."""
    F = f.field
    t = FqPoly.t(F)
    tq = t.powmod(F.order, f)
    images = [FqPoly.const(F, 1) % f]
    for _ in range(1, f.degree()):
        images.append(images[-1] * tq % f)
    return images


def _apply_frobenius(h: FqPoly, images: list[FqPoly], f: FqPoly) -> FqPoly:
    acc = FqPoly._raw(f.field, [])
    for c, img in zip(h.coeffs, images):
        if c:
            acc = acc + img.scale(c)
    return acc


def is_irreducible(f: FqPoly) -> bool:
    """Rabin's test: f | t^(q^d) - t and gcd(f, t^(q^(d/r)) - t) = 1 for primes r | d."""
    d = f.degree()
    if d <= 0:
        return False
    if d == 1:
        return True
    if f.coeffs[0] == 0:
        return False
    f = f.monic()
    F = f.field
    t = FqPoly.t(F)
    images = _frobenius_images(f)
    powers = [t % f]
    h = t % f
    for _ in range(d):
        h = _apply_frobenius(h, images, f)
        powers.append(h)
    if powers[d] != t % f:
        return False
    for r in _prime_divisors(d):
        if poly_gcd(f, powers[d // r] - t).degree() != 0:
            return False
    return True


_ORBIT_LIMIT = 1 << 21


@lru_cache(maxsize=None)
def monic_irreducibles(field: FqField, d: int) -> tuple[FqPoly, ...]:
    """All monic irreducibles of degree d in lexicographic coefficient order.

    Read off from Frobenius orbits in F_{q^d} when that table field is small
    enough, otherwise found by testing every monic polynomial.
    """
    if d < 1:
        raise ValueError("degree must be positive")
    if field.order**d <= _ORBIT_LIMIT:
        return tuple(extension(field, d).irreducibles())
    return irreducibles_by_testing(field, d)


def irreducibles_by_testing(field: FqField, d: int) -> tuple[FqPoly, ...]:
    return tuple(_irreducibles_in_order(field, d))


def _irreducibles_in_order(field: FqField, d: int) -> Iterator[FqPoly]:
    q = field.order
    for idx in range(q**d):
        lower = []
        n = idx
        for _ in range(d):
            n, r = divmod(n, q)
            lower.append(r)
        f = FqPoly._raw(field, lower + [1])
        if is_irreducible(f):
            yield f


def prime_factors(f: FqPoly, seed: int = 0) -> list[FqPoly]:
    """Distinct monic irreducible factors of f, sorted by degree then coefficients.

    Square-free reduction, then distinct-degree splitting and Cantor-Zassenhaus
    equal-degree splitting (odd characteristic only).
    """
    if not f.coeffs:
        raise ValueError("zero polynomial has no factorization")
    rng = random.Random(seed)
    found: set[FqPoly] = set()
    _collect_factors(f.monic(), rng, found)
    return sorted(found)


def _collect_factors(f: FqPoly, rng: random.Random, found: set) -> None:
    if f.degree() <= 0:
        return
    d = f.derivative()
    if not d.coeffs:
        _collect_factors(_pth_root(f), rng, found)
        return
    g = poly_gcd(f, d)
    sqfree = f // g
    for part in _distinct_degree(sqfree):
        found.update(_equal_degree(*part, rng=rng))
    _collect_factors(g, rng, found)


def _pth_root(f: FqPoly) -> FqPoly:
    F = f.field
    e = F.order // F.p  # c^(1/p) = c^(p^(k-1))
    coeffs = [F.pow(f.coeffs[i], e) for i in range(0, len(f.coeffs), F.p)]
    return FqPoly._raw(F, coeffs)


def _distinct_degree(f: FqPoly) -> list[tuple[FqPoly, int]]:
    F = f.field
    t = FqPoly.t(F)
    out = []
    h = t
    e = 0
    while f.degree() >= 2 * (e + 1):
        e += 1
        h = h.powmod(F.order, f)
        g = poly_gcd(f, h - t)
        if g.degree() > 0:
            out.append((g, e))
            f = f // g
            h = h % f
    if f.degree() > 0:
        out.append((f.monic(), f.degree()))
    return out


def _equal_degree(g: FqPoly, e: int, rng: random.Random) -> list[FqPoly]:
    if g.degree() == e:
        return [g.monic()]
    F = g.field
    if F.p == 2:
        raise ValueError("equal-degree splitting is implemented for odd characteristic only")
    exponent = (F.order**e - 1) // 2
    while True:
        a = FqPoly(F, [rng.randrange(F.order) for _ in range(g.degree())])
        if a.degree() <= 0:
            continue
        b = a.powmod(exponent, g) - 1
        h = poly_gcd(g, b)
        if 0 < h.degree() < g.degree():
            return _equal_degree(h, e, rng) + _equal_degree(g // h, e, rng)


# -- places --------------------------------------------------------------------


@dataclass(frozen=True)
class Place:
    """A closed point of the projective line: a monic irreducible or infinity."""

    kind: str
    generator: FqPoly | None
    degree: int

    @classmethod
    def finite(cls, generator: FqPoly) -> "Place":
        return cls("finite", generator, generator.degree())

    @classmethod
    def infinity(cls) -> "Place":
        return cls("infinity", None, 1)

    @property
    def is_infinite(self) -> bool:
        return self.kind == "infinity"

    def sort_key(self):
        if self.is_infinite:
            return (0, ())
        return (1,) + self.generator.sort_key()

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return "(1/t)" if self.is_infinite else f"({self.generator})"


def places_of_degree(field: FqField, d: int, include_infinity: bool = True) -> list[Place]:
    out = [Place.infinity()] if d == 1 and include_infinity else []
    out.extend(Place.finite(f) for f in monic_irreducibles(field, d))
    return out


def places_up_to(field: FqField, r: int, include_infinity: bool = True) -> list[Place]:
    """All places of degree <= r: infinity first, then by degree and coefficients."""
    out = []
    for d in range(1, r + 1):
        out.extend(places_of_degree(field, d, include_infinity))
    return out


# -- discrete logarithms -------------------------------------------------------


def multiplicative_order_is_full(modulus: FqPoly, base: FqPoly) -> bool:
    n = modulus.field.order ** modulus.degree() - 1
    one = FqPoly.const(modulus.field, 1)
    if base.powmod(n, modulus) != one:
        return False
    return all(base.powmod(n // r, modulus) != one for r in _prime_divisors(n))


@lru_cache(maxsize=256)
def _baby_steps(modulus: FqPoly, base: FqPoly) -> tuple[dict, int, FqPoly]:
    n = modulus.field.order ** modulus.degree() - 1
    m = math.isqrt(n - 1) + 1 if n > 1 else 1
    table: dict[tuple, int] = {}
    cur = FqPoly.const(modulus.field, 1) % modulus
    b = base % modulus
    for j in range(m):
        table.setdefault(cur.coeffs, j)
        cur = cur * b % modulus
    giant = inverse_mod(b, modulus).powmod(m, modulus)
    return table, m, giant


def unit_discrete_log(modulus: FqPoly, base: FqPoly, target: FqPoly, check: bool = True) -> int:
    """Least e >= 0 with base^e = target in (F_q[t]/modulus)^x, by baby-step giant-step.

    The modulus must be irreducible and base a generator of the unit group
    (verified unless ``check`` is false).
    """
    if check and not multiplicative_order_is_full(modulus, base):
        raise NotAGeneratorError(f"{base} does not generate (F_q[t]/({modulus}))^x")
    target = target % modulus
    if not target.coeffs:
        raise ValueError("target is not a unit")
    n = modulus.field.order ** modulus.degree() - 1
    table, m, giant = _baby_steps(modulus, base)
    gamma = target
    for i in range(m + 1):
        j = table.get(gamma.coeffs)
        if j is not None:
            return (i * m + j) % n
        gamma = gamma * giant % modulus
    raise NotAGeneratorError("discrete log not found")  # pragma: no cover


# -- rational functions --------------------------------------------------------


class RatFunc:
    """A rational function num/den over F_q with den monic and gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: FqPoly, den: FqPoly | None = None):
        F = num.field
        if den is None:
            den = FqPoly.const(F, 1)
        if not den.coeffs:
            raise ZeroDivisionError("rational function with zero denominator")
        g = poly_gcd(num, den) if num.coeffs else den.monic()
        num, den = num // g, den // g
        inv = F.inv(den.lc())
        self.num = num.scale(inv)
        self.den = den.scale(inv)

    @property
    def field(self) -> FqField:
        return self.num.field

    def _lift(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, FqPoly):
            return RatFunc(other)
        return RatFunc(FqPoly.const(self.field, self.field.coerce(other)))

    def __add__(self, other):
        o = self._lift(other)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if not o.num.coeffs:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __pow__(self, e: int):
        if e < 0:
            return RatFunc(self.den, self.num) ** (-e)
        return RatFunc(self.num**e, self.den**e)

    def __eq__(self, other):
        o = self._lift(other)
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def is_zero(self) -> bool:
        return not self.num.coeffs

    def is_constant(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() == 0

    def valuation(self, pi: FqPoly) -> int | float:
        if self.is_zero():
            return math.inf
        return self.num.valuation(pi) - self.den.valuation(pi)

    def valuation_at_infinity(self) -> int | float:
        if self.is_zero():
            return math.inf
        return self.den.degree() - self.num.degree()

    def at_infinity(self) -> "RatFunc":
        """The same function written in s = 1/t."""
        dn, dd = self.num.degree(), self.den.degree()
        if self.is_zero():
            return self
        n = max(dn, dd)
        return RatFunc(self.num.reverse(n), self.den.reverse(n))

    def __str__(self):
        if self.den.degree() == 0:
            return str(self.num)
        return f"({self.num})/({self.den})"


# -- parsing -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[str]:
    pos = 0
    out = []
    text = text.replace("−", "-")
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character at {text[pos:]!r}")
        out.append(m.group(m.lastindex))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, field: FqField, var: str):
        self.tokens = _tokenize(text)
        self.i = 0
        self.field = field
        self.var = var
        self.text = text

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> RatFunc:
        if not self.tokens:
            raise ParseError("empty expression")
        val = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing input {self.peek()!r} in {self.text!r}")
        return val

    def expr(self) -> RatFunc:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take() == "-":
                sign = -sign
        val = self.term()
        if sign < 0:
            val = -val
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self) -> RatFunc:
        val = self.power()
        while True:
            tok = self.peek()
            if tok in ("*", "/"):
                self.take()
                rhs = self.power()
                val = val * rhs if tok == "*" else val / rhs
            elif tok is not None and (tok == "(" or tok[0].isalnum()):
                val = val * self.power()  # implicit product, e.g. 2t or 3(t+1)
            else:
                return val

    def power(self) -> RatFunc:
        base = self.atom()
        if self.peek() in ("^", "**"):
            self.take()
            tok = self.take()
            if tok is None or not tok.isdigit():
                raise ParseError(f"exponent must be a non-negative integer in {self.text!r}")
            base = base ** int(tok)
        return base

    def atom(self) -> RatFunc:
        tok = self.take()
        F = self.field
        if tok is None:
            raise ParseError(f"unexpected end of {self.text!r}")
        if tok == "(":
            val = self.expr()
            if self.take() != ")":
                raise ParseError(f"unbalanced parentheses in {self.text!r}")
            return val
        if tok.isdigit():
            return RatFunc(FqPoly.const(F, int(tok) % F.p))
        if tok == self.var:
            return RatFunc(FqPoly.t(F))
        if tok == "w" and F.k > 1:
            return RatFunc(FqPoly.const(F, F.w))
        raise ParseError(f"unknown symbol {tok!r} in {self.text!r}")


def parse_ratfunc(text: str, field: FqField, var: str = "t") -> RatFunc:
    """Parse e.g. ``"(t^2 + 1)/(t - 3)"``; ``w`` names the generator of F_{p^k}."""
    return _Parser(text, field, var).parse()


def parse_poly(text: str, field: FqField, var: str = "t") -> FqPoly:
    """Parse a polynomial such as ``"t^7 - t + 1"``."""
    r = parse_ratfunc(text, field, var)
    if r.den.degree() != 0:
        raise ParseError(f"{text!r} is not a polynomial")
    return r.num


# -- extensions of the residue field --------------------------------------------


class Extension:
    """F_{q^d} as a table field, with the embedding of F_q and roots of irreducibles.

    Used to evaluate polynomials over F_q at every point of F_{q^d} at once and
    to realise the residue field F_q[t]/(v) of a degree-d place.
    """

    def __init__(self, base: FqField, d: int):
        self.base = base
        self.degree = d
        if d == 1:
            self.big = base
            self.embed_table = np.arange(base.order, dtype=np.int64)
        else:
            self.big = FqField(base.p, base.k * d)
            self.embed_table = self._build_embedding()
        self._embed_list = self.embed_table.tolist()

    def _build_embedding(self) -> np.ndarray:
        base, big = self.base, self.big
        if base.k == 1:
            return np.arange(base.order, dtype=np.int64)
        # root of the base modulus (coefficients in F_p are shared encodings)
        xs = big.all_elements()
        acc = np.zeros_like(xs)
        for c in reversed(base.modulus):
            acc = big.vadd(big.vmul(acc, xs), c)
        omega = int(np.nonzero(acc == 0)[0][0])
        table = np.empty(base.order, dtype=np.int64)
        for a in range(base.order):
            val = 0
            for c in reversed(base.digits(a)):
                val = big.add(big.mul(val, omega), c)
            table[a] = val
        return table

    def embed(self, c: int) -> int:
        return self._embed_list[c]

    def eval_at(self, f: FqPoly, x: int) -> int:
        big = self.big
        acc = 0
        for c in reversed(f.coeffs):
            acc = big.add(big.mul(acc, x), self._embed_list[c])
        return acc

    def eval_all(self, f: FqPoly, xs: np.ndarray | None = None) -> np.ndarray:
        """Values of f at every element of F_{q^d} (or at the given points)."""
        big = self.big
        if xs is None:
            xs = big.all_elements()
        acc = np.zeros_like(xs)
        for c in reversed(f.coeffs):
            acc = big.vadd(big.vmul(acc, xs), self._embed_list[c])
        return acc

    @cached_property
    def _roots(self) -> dict[tuple, int]:
        """Monic degree-d irreducible (lower coefficients) -> one of its roots."""
        base, big, d = self.base, self.big, self.degree
        xs = big.all_elements()
        if d == 1:
            return {(base.neg(int(a)),): int(a) for a in xs}
        q = base.order
        conj = [xs]
        for _ in range(1, d):
            conj.append(big.vpow(conj[-1], q))
        exact = np.ones(len(xs), dtype=bool)
        for e in range(1, d):
            if d % e == 0:
                exact &= conj[e] != xs
        coeffs = [np.ones_like(xs)]
        for c in conj:
            negc = big.vneg(c)
            new = [np.zeros_like(xs) for _ in range(len(coeffs) + 1)]
            for i, a in enumerate(coeffs):
                new[i + 1] = big.vadd(new[i + 1], a)
                new[i] = big.vadd(new[i], big.vmul(a, negc))
            coeffs = new
        back = np.full(big.order, -1, dtype=np.int64)
        back[self.embed_table] = np.arange(base.order, dtype=np.int64)
        lower = np.stack([back[c] for c in coeffs[:-1]], axis=1)
        out: dict[tuple, int] = {}
        for idx in np.nonzero(exact)[0]:
            key = tuple(lower[idx].tolist())
            if key not in out:
                out[key] = int(idx)
        return out

    def root(self, f: FqPoly) -> int:
        """A root in F_{q^d} of the monic irreducible f of degree d."""
        if f.degree() != self.degree or f.lc() != 1:
            raise ValueError(f"{f} is not monic of degree {self.degree}")
        try:
            return self._roots[f.coeffs[:-1]]
        except KeyError:
            raise ValueError(f"{f} is not irreducible") from None

    def irreducibles(self) -> list[FqPoly]:
        """Monic irreducibles of degree d read off from Frobenius orbits."""
        return sorted(FqPoly._raw(self.base, list(k) + [1]) for k in self._roots)


@lru_cache(maxsize=None)
def extension(base: FqField, d: int) -> Extension:
    return Extension(base, d)


def iter_residues(modulus: FqPoly) -> Iterator[FqPoly]:
    """All residues modulo the given polynomial (brute-force helper)."""
    F = modulus.field
    d = modulus.degree()
    for idx in range(F.order**d):
        cs = []
        n = idx
        for _ in range(d):
            n, r = divmod(n, F.order)
            cs.append(r)
        yield FqPoly._raw(F, cs)
