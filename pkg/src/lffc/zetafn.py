"""Zeta functions of F_q(t) and of hyperelliptic function fields.

Only the number of places of each degree matters here (every Euler factor is
1 - T^deg v), so places are counted rather than constructed: count points over
F_{q^i}, then Moebius-invert.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .coeffield import CycloElem, FieldEndo, _mobius
from .ffpoly import FqField, FqPoly, extension, parse_poly, poly_gcd
from .strat import FuncEqData, Stratification

__all__ = [
    "HyperellipticModel",
    "ZetaStratification",
    "place_count_consistency",
    "places_by_degree",
    "point_counts",
    "zeta_stratification",
]


@dataclass(frozen=True)
class HyperellipticModel:
    """The curve u^2 = f(t) over an odd-characteristic field."""

    field: FqField
    f: FqPoly

    def __post_init__(self):
        if self.field.p == 2:
            raise ValueError("hyperelliptic models need odd characteristic")
        if self.f.degree() < 1:
            raise ValueError("f must be non-constant")
        if poly_gcd(self.f, self.f.derivative()).degree() > 0:
            raise ValueError(f"f = {self.f} is not square-free")

    @classmethod
    def parse(cls, field: FqField, text: str) -> "HyperellipticModel":
        return cls(field, parse_poly(text, field))

    @property
    def genus(self) -> int:
        return (self.f.degree() - 1) // 2


def _points_at_infinity(C: HyperellipticModel, i: int) -> int:
    if C.f.degree() % 2:
        return 1
    return 2 if C.field.chi(C.f.lc()) ** i == 1 else 0


def point_counts(C: HyperellipticModel | FqField, r: int) -> list[int]:
    """[#C(F_q), ..., #C(F_{q^r})]."""
    if isinstance(C, FqField):
        return [C.order**i + 1 for i in range(1, r + 1)]
    out = []
    for i in range(1, r + 1):
        ext = extension(C.field, i)
        chis = ext.big.vchi(ext.eval_all(C.f))
        out.append(int(ext.big.order + np.sum(chis)) + _points_at_infinity(C, i))
    return out


def places_by_degree(C: HyperellipticModel | FqField, r: int) -> list[int]:
    """[b_1, ..., b_r] with b_i the number of places of degree i."""
    a = point_counts(C, r)
    out = []
    for i in range(1, r + 1):
        total = sum(_mobius(i // d) * a[d - 1] for d in range(1, i + 1) if i % d == 0)
        b = Fraction(total, i)
        if b.denominator != 1 or b < 0:
            raise ArithmeticError(f"place count b_{i} = {b} is not a nonnegative integer")
        out.append(int(b))
    return out


def place_count_consistency(a: list[int], b: list[int]) -> bool:
    """a_i = sum_{d | i} d b_d for every i."""
    return all(
        a[i - 1] == sum(d * b[d - 1] for d in range(1, i + 1) if i % d == 0)
        for i in range(1, len(a) + 1)
    )


class ZetaStratification(Stratification):
    """V_i holds b_i anonymous indices (i, j), each with Euler factor 1 - T^i."""

    conductor = 1

    def __init__(self, C: HyperellipticModel | FqField):
        self.curve = C
        self._counts: list[int] = []

    def count(self, i: int) -> int:
        if i > len(self._counts):
            self._counts = places_by_degree(self.curve, i)
        return self._counts[i - 1]

    def indices(self, i: int) -> list[tuple[int, int]]:
        return [(i, j) for j in range(self.count(i))]

    def euler_factor(self, v) -> list[CycloElem]:
        i = v[0]
        return [CycloElem.rational(1)] + [CycloElem.rational(0)] * (i - 1) + [CycloElem.rational(-1)]


def zeta_stratification(C: HyperellipticModel | FqField) -> tuple[ZetaStratification, FuncEqData]:
    F = C if isinstance(C, FqField) else C.field
    q = F.order
    g = 0 if isinstance(C, FqField) else C.genus
    feq = FuncEqData(
        D=[1, -(1 + q), q],
        n=2 * g,
        q=q,
        w=0,
        c=FieldEndo.IDENTITY,
        epsilon=CycloElem.rational(Fraction(q) ** (g - 1)),
        genus=g,
        dim=1,
        conductor_degree=0,
    )
    return ZetaStratification(C), feq
