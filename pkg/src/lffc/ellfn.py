"""Elliptic curves over F_q(t) in characteristic >= 5.

Everything runs on the short model y^2 = x^3 + A x + B with A = -27 c4 and
B = -54 c6, which is isomorphic to the long Weierstrass model over F_q(t)
because 6 is invertible.  At a place with uniformiser pi the model is made
minimal by (A, B) -> (A / pi^4s, B / pi^6s); the valuations of A and of the
discriminant of the minimal model then decide the reduction type.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .coeffield import CycloElem, FieldEndo
from .ffpoly import (
    FqField,
    FqPoly,
    Place,
    RatFunc,
    extension,
    parse_ratfunc,
    places_of_degree,
    prime_factors,
)
from .strat import FuncEqData, PlaceStratification

__all__ = [
    "ConstantCurveError",
    "EllCurveOverFqT",
    "EllStratification",
    "ReductionData",
    "ReductionType",
    "conductor",
    "constant_curve_denominator",
    "denominator_from_trace",
    "ell_stratification",
    "reduce_at_place",
    "root_number",
    "trace_at_good_place",
]


class ConstantCurveError(ValueError):
    pass


class ReductionType(enum.Enum):
    GOOD = "good"
    SPLIT = "split-multiplicative"
    NONSPLIT = "nonsplit-multiplicative"
    ADDITIVE = "additive"


@dataclass(frozen=True)
class EllCurveOverFqT:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with a_i in F_q(t)."""

    field: FqField
    a1: RatFunc
    a2: RatFunc
    a3: RatFunc
    a4: RatFunc
    a6: RatFunc

    def __post_init__(self):
        if self.field.p < 5:
            raise ValueError("elliptic curves are supported only in characteristic >= 5")
        if self.short_disc.is_zero():
            raise ValueError("singular curve: the discriminant vanishes")

    @classmethod
    def parse(cls, field: FqField, a1="0", a2="0", a3="0", a4="0", a6="0") -> "EllCurveOverFqT":
        return cls(field, *(parse_ratfunc(str(a), field) for a in (a1, a2, a3, a4, a6)))

    @cached_property
    def c4_c6(self) -> tuple[RatFunc, RatFunc]:
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        b2 = a1 * a1 + a2 * 4
        b4 = a4 * 2 + a1 * a3
        b6 = a3 * a3 + a6 * 4
        c4 = b2 * b2 - b4 * 24
        c6 = -(b2 * b2 * b2) + b2 * b4 * 36 - b6 * 216
        return c4, c6

    @cached_property
    def short_model(self) -> tuple[RatFunc, RatFunc]:
        c4, c6 = self.c4_c6
        return c4 * (-27), c6 * (-54)

    @cached_property
    def short_disc(self) -> RatFunc:
        """4A^3 + 27B^2, a unit multiple of the discriminant of the short model."""
        A, B = self.short_model
        return A * A * A * 4 + B * B * 27

    def __str__(self):
        terms = ["y^2"]
        if not self.a1.is_zero():
            terms.append(f"({self.a1})*x*y")
        if not self.a3.is_zero():
            terms.append(f"({self.a3})*y")
        rhs = ["x^3"]
        for a, mono in ((self.a2, "x^2"), (self.a4, "x"), (self.a6, "")):
            if not a.is_zero():
                rhs.append(f"({a})*{mono}" if mono else f"({a})")
        return " + ".join(terms) + " = " + " + ".join(rhs)


@dataclass(frozen=True)
class ReductionData:
    """Local data at a place.

    ``a_v`` is the trace of Frobenius on inertia invariants: the usual trace at
    good places, +1 / -1 at split / non-split places, and 0 at additive ones.
    """

    place: Place
    type: ReductionType
    a_v: int
    cond_exp: int
    disc_val: int
    potentially_good: bool
    q: int

    def euler_factor(self) -> list[int]:
        d = self.place.degree
        out = [0] * (2 * d + 1)
        out[0] = 1
        if self.type is ReductionType.GOOD:
            out[d] = -self.a_v
            out[2 * d] = self.residue_size
        elif self.type is not ReductionType.ADDITIVE:
            out[d] = -self.a_v
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return out

    @property
    def residue_size(self) -> int:
        return self.q**self.place.degree


def _local_model(E: EllCurveOverFqT, v: Place) -> tuple[RatFunc, RatFunc, RatFunc, FqPoly]:
    A, B = E.short_model
    D = E.short_disc
    if v.is_infinite:
        return A.at_infinity(), B.at_infinity(), D.at_infinity(), FqPoly.t(E.field)
    return A, B, D, v.generator


def _reduce(r: RatFunc, ext, alpha: int) -> int:
    big = ext.big
    return big.div(ext.eval_at(r.num, alpha), ext.eval_at(r.den, alpha))


def _minimal_at(E: EllCurveOverFqT, v: Place):
    A, B, D, pi = _local_model(E, v)
    vA, vB, vD = A.valuation(pi), B.valuation(pi), D.valuation(pi)
    s = min(vA // 4 if vA != math.inf else math.inf, vB // 6 if vB != math.inf else math.inf)
    piR = RatFunc(pi)
    if s:
        A = A / piR ** (4 * s) if not A.is_zero() else A
        B = B / piR ** (6 * s) if not B.is_zero() else B
    vA = vA - 4 * s if vA != math.inf else math.inf
    return A, B, pi, vA, vD - 12 * s


def _residue_data(pi: FqPoly):
    ext = extension(pi.field, pi.degree())
    return ext, ext.root(pi)


def _trace(ext, a: int, b: int) -> int:
    big = ext.big
    xs = big.all_elements()
    vals = big.vadd(big.vmul(big.vadd(big.vmul(xs, xs), a), xs), b)
    return -int(np.sum(big.vchi(vals)))


def reduce_at_place(E: EllCurveOverFqT, v: Place) -> ReductionData:
    A, B, pi, vA, vD = _minimal_at(E, v)
    q = E.field.order
    potentially_good = vA == math.inf or 3 * vA >= vD
    if vD == 0:
        ext, alpha = _residue_data(pi)
        a = _trace(ext, _reduce(A, ext, alpha), _reduce(B, ext, alpha))
        return ReductionData(v, ReductionType.GOOD, a, 0, 0, True, q)
    if vA == 0:
        ext, alpha = _residue_data(pi)
        big = ext.big
        # -c6 = B / 54 on the minimal model
        minus_c6 = big.div(_reduce(B, ext, alpha), ext.embed(54 % E.field.p))
        split = big.chi(minus_c6) == 1
        kind = ReductionType.SPLIT if split else ReductionType.NONSPLIT
        return ReductionData(v, kind, 1 if split else -1, 1, vD, False, q)
    return ReductionData(v, ReductionType.ADDITIVE, 0, 2, vD, potentially_good, q)


def trace_at_good_place(E: EllCurveOverFqT, v: Place) -> int:
    """a_v = q_v + 1 - #E(k(v)) at a place of good reduction."""
    data = reduce_at_place(E, v)
    if data.type is not ReductionType.GOOD:
        raise ValueError(f"{v} is a place of bad reduction ({data.type.value})")
    return data.a_v


def bad_place_candidates(E: EllCurveOverFqT) -> list[Place]:
    A, B = E.short_model
    D = E.short_disc
    prod = D.num * A.den * B.den
    places = [Place.infinity()]
    if prod.degree() > 0:
        places += sorted(Place.finite(p) for p in prime_factors(prod))
    return places


def conductor(E: EllCurveOverFqT, search_bound: int | None = None) -> tuple[list[tuple[ReductionData, int]], int]:
    """Bad places with their exponents, and n = deg f - 4.

    Bad finite places divide the numerator of the discriminant or a
    denominator of the short model, so they are found by factoring.
    ``search_bound`` optionally asserts the largest degree of a bad place.
    """
    out = []
    for v in bad_place_candidates(E):
        data = reduce_at_place(E, v)
        if data.cond_exp:
            out.append((data, data.cond_exp))
    if search_bound is not None:
        worst = max((d.place.degree for d, _ in out), default=0)
        if worst > search_bound:
            raise ValueError(f"bad place of degree {worst} exceeds the search bound {search_bound}")
    deg_f = sum(d.place.degree * e for d, e in out)
    return out, deg_f - 4


def _jacobi(a: int, F: FqField, deg: int) -> int:
    return F.chi(F.coerce(a % F.p)) ** deg


def local_sign(data: ReductionData, F: FqField) -> int:
    d = data.place.degree
    if data.type is ReductionType.SPLIT:
        return -1
    if data.type is ReductionType.NONSPLIT:
        return 1
    if data.type is ReductionType.GOOD:
        return 1
    if not data.potentially_good:
        return _jacobi(-1, F, d)
    r = data.disc_val % 12
    if r == 0:
        return 1
    if r in (4, 8):
        return _jacobi(-3, F, d)
    if r in (3, 9):
        return _jacobi(-2, F, d)
    return _jacobi(-1, F, d)


def root_number(E: EllCurveOverFqT) -> CycloElem:
    """epsilon = q^n times the product of the local signs over the bad places."""
    bad, n = conductor(E)
    if not bad:
        raise ConstantCurveError("constant curve: use constant_curve_denominator")
    sign = 1
    for data, _ in bad:
        sign *= local_sign(data, E.field)
    return CycloElem.rational(sign * Fraction(E.field.order) ** n)


def denominator_from_trace(a: int, q: int) -> list[int]:
    """(1 - aT + qT^2)(1 - aqT + q^3T^2)."""
    f = [1, -a, q]
    g = [1, -a * q, q**3]
    out = [0] * 5
    for i, x in enumerate(f):
        for j, y in enumerate(g):
            out[i + j] += x * y
    return out


def constant_curve_denominator(E0: EllCurveOverFqT, q: int | None = None) -> list[int]:
    """N(E0, T) N(E0, qT) for a curve whose coefficients all lie in F_q."""
    A, B = E0.short_model
    if not (A.is_constant() and B.is_constant()):
        raise ValueError("the curve has non-constant coefficients")
    F = E0.field
    if q is not None and q != F.order:
        raise ValueError(f"q = {q} does not match the base field {F}")
    ext = extension(F, 1)
    a = _trace(ext, A.num[0] if A.num.coeffs else 0, B.num[0] if B.num.coeffs else 0)
    return denominator_from_trace(a, F.order)


class EllStratification(PlaceStratification):
    """Places of P^1 over F_q with the Euler factors of the curve."""

    conductor = 1

    def __init__(self, E: EllCurveOverFqT, workers: int = 1):
        self.curve = E
        self.workers = workers
        self._data: dict[Place, ReductionData] = {}

    def places_of_degree(self, d: int) -> list[Place]:
        return places_of_degree(self.curve.field, d)

    def reduction(self, v: Place) -> ReductionData:
        if v not in self._data:
            self._data[v] = reduce_at_place(self.curve, v)
        return self._data[v]

    def local_factor(self, v: Place) -> list[CycloElem]:
        return [CycloElem.rational(c) for c in self.reduction(v).euler_factor()]

    def table(self, r: int) -> list[ReductionData]:
        return [self.reduction(v) for d in range(1, r + 1) for v in self.places_of_degree(d)]


def ell_stratification(E: EllCurveOverFqT, with_epsilon: bool = True, workers: int = 1) -> tuple[EllStratification, FuncEqData]:
    bad, n = conductor(E)
    if not bad:
        raise ConstantCurveError(
            "the curve has good reduction everywhere, so it is constant; "
            "its L-function is D(T) = constant_curve_denominator(E) with N = 1"
        )
    feq = FuncEqData(
        D=[1],
        n=n,
        q=E.field.order,
        w=1,
        c=FieldEndo.IDENTITY,
        epsilon=root_number(E) if with_epsilon else None,
        genus=0,
        dim=2,
        conductor_degree=n + 4,
    )
    return EllStratification(E, workers), feq
