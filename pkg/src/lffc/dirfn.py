"""Primitive Dirichlet characters of F_q(t) with square-free modulus.

A character is the product of one component per prime P_j of the modulus.
Each component is pinned down by a generator g_j of (F_q[t]/P_j)^x and the
root of unity zeta_{m_j}^{e_j} it is sent to, so chi_j(a) = image_j^dlog(a).
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from functools import cached_property

from .coeffield import CycloElem, FieldEndo
from .ffpoly import (
    FqField,
    FqPoly,
    NotAGeneratorError,
    ParseError,
    Place,
    is_irreducible,
    multiplicative_order_is_full,
    parse_poly,
    places_of_degree,
    poly_gcd,
    unit_discrete_log,
)
from .strat import FuncEqData, PlaceStratification

__all__ = [
    "CharComponent",
    "ConstantRestriction",
    "DirichletChar",
    "DirichletStratification",
    "char_eval",
    "dirichlet_stratification",
    "restrict_to_constants",
]

_IMAGE = re.compile(r"^\s*zeta(\d+)(?:\s*\^\s*(-?\d+))?\s*$")


@dataclass(frozen=True)
class CharComponent:
    """The character of (F_q[t]/prime)^x sending ``base`` to zeta_m^e."""

    prime: FqPoly
    base: FqPoly
    m: int
    e: int

    def __post_init__(self):
        if self.prime.degree() < 1 or self.prime.lc() != 1 or not is_irreducible(self.prime):
            raise ValueError(f"{self.prime} is not a monic irreducible polynomial")
        if self.m < 1:
            raise ValueError("root-of-unity order must be positive")
        if not multiplicative_order_is_full(self.prime, self.base % self.prime):
            raise NotAGeneratorError(f"{self.base} does not generate (F_q[t]/({self.prime}))^x")
        if (self.e * self.group_order) % self.m:
            raise ValueError(f"zeta{self.m}^{self.e} is not a {self.group_order}-th root of unity")

    @classmethod
    def parse(cls, field: FqField, text: str) -> "CharComponent":
        """``"<prime>:<base>:zeta<m>^<e>"``; the image may also be ``1``, ``-1`` or ``i``."""
        parts = text.split(":")
        if len(parts) != 3:
            raise ParseError(f"component {text!r} is not of the form P:base:zeta<m>^<e>")
        prime = parse_poly(parts[0], field)
        base = parse_poly(parts[1], field)
        img = parts[2].strip()
        aliases = {"1": (1, 0), "-1": (2, 1), "i": (4, 1), "-i": (4, 3)}
        if img in aliases:
            m, e = aliases[img]
        else:
            match = _IMAGE.match(img)
            if not match:
                raise ParseError(f"cannot read the root of unity {img!r}")
            m, e = int(match.group(1)), int(match.group(2) or 1)
        return cls(prime, base, m, e % m)

    @property
    def group_order(self) -> int:
        return self.prime.field.order ** self.prime.degree() - 1

    @property
    def image(self) -> CycloElem:
        return CycloElem.zeta(self.m, self.e)

    @property
    def value_order(self) -> int:
        return self.m // math.gcd(self.m, self.e)

    def is_trivial(self) -> bool:
        return self.value_order == 1

    def exponent(self, a: FqPoly) -> int | None:
        """k with chi_j(a) = zeta_m^k, or None when prime divides a."""
        r = a % self.prime
        if not r.coeffs:
            return None
        return self.e * unit_discrete_log(self.prime, self.base, r, check=False) % self.m

    def value(self, a: FqPoly) -> CycloElem:
        k = self.exponent(a)
        return CycloElem.rational(0) if k is None else CycloElem.zeta(self.m, k)

    def trivial_on_constants(self) -> bool:
        F = self.prime.field
        return self.exponent(FqPoly.const(F, F.generator)) == 0

    def __str__(self):
        return f"{self.prime}:{self.base}:zeta{self.m}^{self.e}"


class DirichletChar:
    def __init__(self, components):
        self.components = tuple(components)
        if not self.components:
            raise ValueError("a Dirichlet character needs at least one component")
        primes = [c.prime for c in self.components]
        if len(set(primes)) != len(primes):
            raise ValueError("components must have distinct primes (square-free modulus)")
        fields = {c.prime.field for c in self.components}
        if len(fields) != 1:
            raise ValueError("components are defined over different fields")
        self.field: FqField = fields.pop()
        for c in self.components:
            if c.is_trivial():
                raise ValueError(f"component at {c.prime} is trivial, so the character is not primitive")
        mod = FqPoly.const(self.field, 1)
        for p in primes:
            mod = mod * p
        self.modulus = mod
        self.conductor = math.lcm(*(c.value_order for c in self.components))

    @classmethod
    def parse(cls, field: FqField, texts) -> "DirichletChar":
        return cls(CharComponent.parse(field, t) for t in texts)

    def component_values(self, v: Place) -> list[CycloElem]:
        """Per-component values at a place; at infinity 1 or 0 by triviality on constants."""
        if v.is_infinite:
            return [CycloElem.rational(1 if c.trivial_on_constants() else 0) for c in self.components]
        return [c.value(v.generator) for c in self.components]

    def __call__(self, a: FqPoly) -> CycloElem:
        return char_eval(self, a)

    def __str__(self):
        return " * ".join(f"chi[{c}]" for c in self.components)


def char_eval(chi: DirichletChar, a: FqPoly) -> CycloElem:
    if poly_gcd(a, chi.modulus).degree() != 0:
        return CycloElem.rational(0)
    M = chi.conductor
    total = 0
    for c in chi.components:
        total += c.exponent(a) * (M // c.value_order) // (c.m // c.value_order)
    return CycloElem.zeta(M, total % M) if M > 1 else CycloElem.rational(1)


class ConstantRestriction(enum.Enum):
    TRIVIAL = "trivial"
    NONTRIVIAL = "nontrivial"


def restrict_to_constants(chi: DirichletChar) -> ConstantRestriction:
    """Whether chi is trivial on F_q^x, tested on a generator of F_q^x."""
    F = chi.field
    value = char_eval(chi, FqPoly.const(F, F.generator))
    return ConstantRestriction.TRIVIAL if value == CycloElem.rational(1) else ConstantRestriction.NONTRIVIAL


class DirichletStratification(PlaceStratification):
    """All places of P^1; ramified ones have Euler factor 1 and drop out of every V_i."""

    def __init__(self, chi: DirichletChar, workers: int = 1):
        self.chi = chi
        self.conductor = chi.conductor
        self.workers = workers

    @cached_property
    def alpha_infinity(self) -> int:
        return 0 if restrict_to_constants(self.chi) is ConstantRestriction.TRIVIAL else 1

    def places_of_degree(self, d: int) -> list[Place]:
        return places_of_degree(self.chi.field, d)

    def value(self, v: Place) -> CycloElem:
        if v.is_infinite:
            return CycloElem.rational(1 - self.alpha_infinity)
        return char_eval(self.chi, v.generator)

    def local_factor(self, v: Place) -> list[CycloElem]:
        val = self.value(v)
        if not val:
            return [CycloElem.rational(1)]
        return [CycloElem.rational(1)] + [CycloElem.rational(0)] * (v.degree - 1) + [-val]


def dirichlet_stratification(chi: DirichletChar, workers: int = 1) -> tuple[DirichletStratification, FuncEqData]:
    L = DirichletStratification(chi, workers)
    deg_f = chi.modulus.degree() + L.alpha_infinity
    feq = FuncEqData(
        D=[1],
        n=deg_f - 2,
        q=chi.field.order,
        w=0,
        c=FieldEndo.CONJUGATION,
        epsilon=None,
        genus=0,
        dim=1,
        conductor_degree=deg_f,
    )
    return L, feq
