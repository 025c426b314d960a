"""Stratifications and the algorithms that turn Euler factors into L-functions.

A stratification is a family of Euler factors L_v(T) in 1 + T F[T] indexed by
v, grouped into the finite sets V_i of indices whose factor first differs from
1 in degree i.  The L-function is prod_v L_v(T)^-1 = N(T)/D(T).  Given D and
deg N, the functions below recover N from finitely many factors, shorten the
work with a functional equation L(T) = eps T^(n-d) L(f/T)^c, or recover eps.
"""

from __future__ import annotations

import math
import multiprocessing
import os
from abc import ABC, abstractmethod
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Sequence

import mpmath

from .coeffield import CycloElem, FieldEndo, apply_endo, complex_embed, mp_embed
from .series import TruncSeries, as_coeffs, poly_degree, trunc_inv, trunc_mul

__all__ = [
    "Check",
    "EpsilonRun",
    "FuncEqData",
    "LResult",
    "PlaceStratification",
    "Stratification",
    "StratificationError",
    "TableStratification",
    "alg_coefficients",
    "alg_epsilon",
    "alg_funceq",
    "alg_rationality",
    "epsilon_search",
    "functional_equation_coefficients",
    "stratum_of",
    "synthetic_stratification",
    "verify_degree_formula",
    "verify_epsilon_modulus",
    "verify_functional_equation",
    "verify_riemann_hypothesis",
]

_ZERO = CycloElem.rational(0)
_ONE = CycloElem.rational(1)


class StratificationError(ValueError):
    pass


def stratum_of(euler: Sequence) -> int | None:
    """Degree of the first non-constant term of an Euler factor (None for L_v = 1)."""
    for k in range(1, len(euler)):
        if euler[k]:
            return k
    return None


class Stratification(ABC):
    """Provider contract: the index sets V_i and the Euler factor of each index.

    ``conductor`` is the m of the coefficient field Q(zeta_m).
    """

    conductor: int = 1

    @abstractmethod
    def indices(self, i: int) -> Sequence[Hashable]:
        """The finite set V_i, in a deterministic order."""

    @abstractmethod
    def euler_factor(self, v: Hashable) -> list[CycloElem]:
        """Coefficients of L_v(T), constant term first."""


class TableStratification(Stratification):
    """A stratification given by an explicit finite list of Euler factors."""

    def __init__(self, factors: dict | Sequence, conductor: int | None = None):
        if not isinstance(factors, dict):
            factors = dict(enumerate(factors))
        self._factors = {v: as_coeffs(e) for v, e in factors.items()}
        self._strata: dict[int, list] = {}
        for v, e in self._factors.items():
            if not e or e[0] != _ONE:
                raise StratificationError(f"Euler factor of {v!r} does not start with 1")
            s = stratum_of(e)
            if s is not None:
                self._strata.setdefault(s, []).append(v)
        if conductor is None:
            conductor = 1
            for e in self._factors.values():
                for c in e:
                    conductor = math.lcm(conductor, c.m)
        self.conductor = conductor

    def indices(self, i: int) -> list:
        return list(self._strata.get(i, ()))

    def euler_factor(self, v) -> list[CycloElem]:
        return self._factors[v]

    def max_stratum(self) -> int:
        return max(self._strata, default=0)


_POOL_TARGET = None


def _pool_init(target):
    global _POOL_TARGET
    _POOL_TARGET = target


def _pool_factors(places):
    return [_POOL_TARGET.local_factor(v) for v in places]


class PlaceStratification(Stratification):
    """Base class for backends whose indices are places graded by degree.

    A place of degree d has an Euler factor in 1 + T^d F[T^d]; it belongs to
    V_i for the first degree i (a multiple of d) with a nonzero coefficient.
    Factors and strata are cached, so re-enumeration is cheap.
    """

    workers: int = 1

    @abstractmethod
    def places_of_degree(self, d: int) -> Sequence[Hashable]:
        """All places of degree d, in a deterministic order."""

    @abstractmethod
    def local_factor(self, v: Hashable) -> list[CycloElem]:
        """L_v(T) for a place v."""

    def _cache(self) -> dict:
        try:
            return self.__dict__["_factor_cache"]
        except KeyError:
            self.__dict__["_factor_cache"] = {}
            self.__dict__["_degree_done"] = set()
            return self.__dict__["_factor_cache"]

    def factors_of_degree(self, d: int) -> list[tuple[Hashable, list[CycloElem]]]:
        cache = self._cache()
        places = list(self.places_of_degree(d))
        if d not in self.__dict__["_degree_done"]:
            todo = [v for v in places if v not in cache]
            if self.workers > 1 and len(todo) >= 4 * self.workers:
                chunks = [todo[j :: self.workers] for j in range(self.workers)]
                ctx = multiprocessing.get_context("fork") if os.name == "posix" else None
                with ProcessPoolExecutor(self.workers, mp_context=ctx, initializer=_pool_init, initargs=(self,)) as ex:
                    for chunk, result in zip(chunks, ex.map(_pool_factors, chunks)):
                        cache.update(zip(chunk, result))
            else:
                for v in todo:
                    cache[v] = as_coeffs(self.local_factor(v))
            self.__dict__["_degree_done"].add(d)
        return [(v, cache[v]) for v in places]

    def indices(self, i: int) -> list:
        out = []
        for d in range(1, i + 1):
            if i % d == 0:
                out.extend(v for v, e in self.factors_of_degree(d) if stratum_of(e) == i)
        return out

    def euler_factor(self, v) -> list[CycloElem]:
        cache = self._cache()
        if v not in cache:
            cache[v] = as_coeffs(self.local_factor(v))
        return cache[v]


# -- functional-equation data ------------------------------------------------------


@dataclass
class FuncEqData:
    """D(T), deg N, and the functional equation L(T) = eps T^(n-d) L(f/T)^c with f = q^-(w+1)."""

    D: list
    n: int
    q: int
    w: int
    c: FieldEndo = FieldEndo.IDENTITY
    epsilon: CycloElem | None = None
    genus: int = 0
    dim: int = 1
    conductor_degree: int = 0

    def __post_init__(self):
        self.D = as_coeffs(self.D)
        if not self.D or self.D[0] != _ONE:
            raise ValueError("D(T) must have constant term 1")
        while len(self.D) > 1 and not self.D[-1]:
            self.D.pop()
        if self.n < 0:
            raise ValueError("deg N must be non-negative")
        if self.epsilon is not None:
            self.epsilon = CycloElem.coerce(self.epsilon)

    @property
    def d(self) -> int:
        return len(self.D) - 1

    @property
    def f(self) -> CycloElem:
        return CycloElem.rational(Fraction(1, self.q ** (self.w + 1)))

    def with_epsilon(self, epsilon) -> "FuncEqData":
        return FuncEqData(self.D, self.n, self.q, self.w, self.c, epsilon, self.genus, self.dim, self.conductor_degree)


@dataclass
class Check:
    passed: bool
    details: dict = field(default_factory=dict)


@dataclass
class LResult:
    N: list
    D: list
    epsilon: CycloElem | None
    checks: dict = field(default_factory=dict)


# -- the four algorithms ----------------------------------------------------------


def _check_factor(v, euler, i: int) -> None:
    if not euler or euler[0] != _ONE or stratum_of(euler) != i:
        raise StratificationError(
            f"Euler factor of index {v!r} is not in V_{i}: "
            f"expected 1 + O(T^{i}) with a nonzero T^{i} term"
        )


def alg_rationality(L: Stratification, D, n0: int, n1: int, nprime: int) -> TruncSeries:
    """[D]_n' * prod_{n0 <= i <= n1} prod_{v in V_i} [L_v^-1]_n', truncated at n'.

    When L = N/D and n0 <= 1, the result agrees with N through degree n1.
    """
    if n1 > nprime or nprime < 0:
        raise ValueError(f"need n1 <= n', got n1 = {n1}, n' = {nprime}")
    P = TruncSeries.one(nprime)
    for i in range(max(n0, 1), n1 + 1):
        for v in L.indices(i):
            euler = L.euler_factor(v)
            _check_factor(v, euler, i)
            P = trunc_mul(P, euler, nprime)
    P = trunc_inv(P, nprime)
    return trunc_mul(P, as_coeffs(D), nprime)


def functional_equation_coefficients(P: Sequence, D: Sequence, m: int, f, c: FieldEndo) -> list[CycloElem]:
    """The M_0..M_m recursion: eps * M_k = N_(n-k) whenever P_i = N_i for i <= k."""
    D = as_coeffs(D)
    f = CycloElem.coerce(f)
    d = poly_degree(D)
    cP = [apply_endo(c, x) for x in P[: m + 1]]
    cD = [apply_endo(c, x) for x in D]
    M: list[CycloElem] = []
    for k in range(m + 1):
        h = _ONE
        kp = min(d, k)
        Mk = _ZERO
        for i in range(k + 1):
            if 0 <= k - i <= kp:
                Mk = Mk + cP[i] * D[d - (k - i)] * h
            if 1 <= i <= kp:
                Mk = Mk - M[k - i] * cD[i] * h
            h = h * f
        M.append(Mk)
    return M


def alg_coefficients(L: Stratification, D, m: int, n1: int, nprime: int, f, c: FieldEndo):
    """(P, [M_0, ..., M_m]) with P from alg_rationality(L, D, 1, n1, n')."""
    if not m <= n1 <= nprime:
        raise ValueError(f"need m <= n1 <= n', got {m}, {n1}, {nprime}")
    P = alg_rationality(L, D, 1, n1, nprime)
    return P, functional_equation_coefficients(P.coeffs, D, m, f, c)


def alg_funceq(L: Stratification, feq: FuncEqData) -> list[CycloElem]:
    """N(T) from V_1..V_floor(n/2) and a known epsilon."""
    if feq.epsilon is None:
        raise ValueError("alg_funceq needs epsilon; use alg_epsilon first")
    n = feq.n
    n1 = n // 2
    m = n - n1 - 1
    if n == 0:
        return [_ONE]
    P, M = alg_coefficients(L, feq.D, m, n1, n1, feq.f, feq.c)
    N = list(P.coeffs) + [_ZERO] * (n - n1)
    for k in range(n - m, n + 1):
        N[k] = N[k] + feq.epsilon * M[n - k]
    return N


@dataclass
class EpsilonRun:
    epsilon: CycloElem
    k: int
    P: TruncSeries
    M: list


def epsilon_search(L: Stratification, feq: FuncEqData) -> EpsilonRun:
    """Recover epsilon, also reporting the degree k whose coefficient was used."""
    n = feq.n
    n1 = m = (n + 1) // 2
    P, M = alg_coefficients(L, feq.D, m, n1, n, feq.f, feq.c)
    k = next(k for k in range(n - m, n + 1) if M[n - k])
    if n1 < k:
        Q = alg_rationality(L, [_ONE], n1 + 1, k, k)
        R = trunc_mul(P.truncate(k), Q, k)
    else:
        R = P.truncate(k)
    return EpsilonRun(R[k] / M[n - k], k, P, M)


def alg_epsilon(L: Stratification, feq: FuncEqData) -> CycloElem:
    """The epsilon factor, from the minimal k with M_(n-k) != 0."""
    return epsilon_search(L, feq).epsilon


# -- synthetic stratifications ------------------------------------------------------


def synthetic_stratification(target, max_degree: int) -> TableStratification:
    """One index per degree i <= max_degree with L_i = 1 + a_i T^i, chosen so that
    prod L_i^-1 agrees with the target series through max_degree."""
    tc = as_coeffs(target.coeffs if isinstance(target, TruncSeries) else target)
    if not tc or tc[0] != _ONE:
        raise ValueError("target series must start with 1")
    tc = tc[: max_degree + 1] + [_ZERO] * (max_degree + 1 - len(tc))
    cur = TruncSeries.one(max_degree)
    factors = {}
    for i in range(1, max_degree + 1):
        a = cur[i] - tc[i]
        if a:
            euler = [_ONE] + [_ZERO] * (i - 1) + [a]
            factors[f"v{i}"] = euler
            cur = trunc_mul(cur, trunc_inv(euler, max_degree), max_degree)
    conductor = 1
    for c in tc:
        conductor = math.lcm(conductor, c.m)
    return TableStratification(factors, conductor)


# -- verification -------------------------------------------------------------------


def verify_functional_equation(N: Sequence, feq: FuncEqData) -> Check:
    """N_(n-k) = eps * M_k for k = 0..n, with M built from N's own coefficients."""
    if feq.epsilon is None:
        raise ValueError("epsilon is required")
    N = as_coeffs(N)
    n = feq.n
    N = N + [_ZERO] * (n + 1 - len(N))
    if len(N) > n + 1 and any(N[n + 1 :]):
        return Check(False, {"reason": f"deg N exceeds n = {n}"})
    M = functional_equation_coefficients(N, feq.D, n, feq.f, feq.c)
    bad = [k for k in range(n + 1) if N[n - k] != feq.epsilon * M[k]]
    return Check(not bad, {"failing_k": bad})


def verify_riemann_hypothesis(N: Sequence, q: int, w: int, tol: float = 1e-8, dps: int = 60) -> Check:
    """All roots of N have modulus q^(-(w+1)/2) within relative tol.

    Roots are eigenvalues of the companion matrix, computed in mpmath at
    ``dps`` digits so that clustered roots keep enough accuracy.
    """
    N = as_coeffs(N)
    deg = poly_degree(N)
    if deg < 1:
        raise ValueError("N must be non-constant")
    with mpmath.workdps(dps):
        mp_target = mpmath.mpf(q) ** (-mpmath.mpf(w + 1) / 2)
        cs = [mp_embed(c) for c in N[: deg + 1]]
        lead = cs[deg]
        comp = mpmath.zeros(deg, deg)
        for i in range(1, deg):
            comp[i, i - 1] = 1
        for i in range(deg):
            comp[i, deg - 1] = -cs[i] / lead
        try:
            if deg == 1:  # mpmath.eig mishandles 1x1 input
                roots = [-cs[0] / lead]
            else:
                roots = mpmath.eig(comp, left=False, right=False)
        except Exception as exc:  # mpmath signals non-convergence with plain exceptions
            return Check(False, {"error": f"root finding did not converge: {exc}", "tol": tol})
        residuals = [float(abs(abs(r) - mp_target) / mp_target) for r in roots]
        moduli = [float(abs(r)) for r in roots]
    target = float(mp_target)
    return Check(
        max(residuals) <= tol,
        {"target": target, "tol": tol, "moduli": moduli, "max_residual": max(residuals)},
    )


def verify_epsilon_modulus(epsilon, feq: FuncEqData, tol: float = 1e-9) -> Check:
    """|eps| = q^((deg f + (2g - 2) dim)(w + 1)/2)."""
    expo = (feq.conductor_degree + (2 * feq.genus - 2) * feq.dim) * (feq.w + 1) / 2
    target = float(feq.q) ** expo
    value = abs(complex_embed(epsilon))
    residual = abs(value - target) / target
    return Check(residual <= tol, {"target": target, "value": value, "tol": tol, "residual": residual})


def verify_degree_formula(N: Sequence, feq: FuncEqData) -> Check:
    """deg N = n and n - d = deg f + (2g - 2) dim."""
    deg = poly_degree(as_coeffs(N))
    expected = feq.conductor_degree + (2 * feq.genus - 2) * feq.dim
    ok = deg == feq.n and feq.n - feq.d == expected
    return Check(ok, {"deg_N": deg, "n": feq.n, "d": feq.d, "n_minus_d_expected": expected})
