"""Synthetic L-functions with a planted functional equation.

A numerator N is assembled from factors that are self-dual under
T -> f/T (followed by c), so L = N/D satisfies the functional equation with
a known epsilon.  The expansion of L then feeds synthetic_stratification,
which gives an abstract Euler product to run the algorithms on.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .coeffield import CycloElem, FieldEndo, apply_endo
from .ffpoly import is_prime, parse_prime_power
from .series import as_coeffs, poly_degree, trunc_inv, trunc_mul
from .strat import FuncEqData, TableStratification, synthetic_stratification

__all__ = [
    "PlantedCase",
    "functional_equation_holds",
    "planted_case",
    "poly_mul",
    "sqrt_prime_power",
]

_ONE = CycloElem.rational(1)
_ZERO = CycloElem.rational(0)


def poly_mul(a, b) -> list[CycloElem]:
    a, b = as_coeffs(a), as_coeffs(b)
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
    return out


def _legendre(a: int, p: int) -> int:
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def sqrt_prime_power(q: int) -> CycloElem:
    """An exact square root of q = p^k inside a cyclotomic field (Gauss sums for odd p)."""
    p, k = parse_prime_power(q)
    if p == 2:
        root_p = CycloElem.zeta(8, 1) + CycloElem.zeta(8, 7)
    else:
        g = CycloElem.rational(0)
        for a in range(1, p):
            g = g + CycloElem.zeta(p, a) * _legendre(a, p)
        # g^2 = (-1)^((p-1)/2) p
        root_p = g if p % 4 == 1 else g * CycloElem.zeta(4, 3)
    out = CycloElem.rational(p ** (k // 2))
    if k % 2:
        out = out * root_p
    assert out * out == CycloElem.rational(q)
    return out


def _dual(N, f: CycloElem, c: FieldEndo, n: int) -> list[CycloElem]:
    """T^n N(f/T)^c as a coefficient list."""
    N = as_coeffs(N) + [_ZERO] * (n + 1 - len(N))
    out = [_ZERO] * (n + 1)
    for i in range(n + 1):
        out[n - i] = apply_endo(c, N[i]) * f**i
    return out


def functional_equation_holds(N, feq: FuncEqData) -> bool:
    """N * D^ = eps * N^ * D as polynomials, where X^ = T^deg X(f/T)^c.

    This is L(T) = eps T^(n-d) L(f/T)^c with denominators cleared; it is an
    independent oracle for the coefficient recursion used elsewhere.
    """
    f = feq.f
    lhs = poly_mul(N, _dual(feq.D, f, feq.c, feq.d))
    rhs = poly_mul(_dual(N, f, feq.c, feq.n), feq.D)
    rhs = [feq.epsilon * x for x in rhs]
    size = max(len(lhs), len(rhs))
    lhs += [_ZERO] * (size - len(lhs))
    rhs += [_ZERO] * (size - len(rhs))
    return lhs == rhs


@dataclass
class PlantedCase:
    N: list
    feq: FuncEqData  # carries the planted epsilon
    L: TableStratification
    adversarial: bool = False


def _random_elem(rng: random.Random, m: int, bound: int = 3) -> CycloElem:
    while True:
        deg = {1: 1, 3: 2, 4: 2, 8: 4}[m]
        coords = [Fraction(rng.randint(-bound, bound), rng.choice((1, 1, 1, 2, 3))) for _ in range(deg)]
        x = CycloElem(m, coords)
        if x:
            return x


def _unit_root(rng: random.Random, m: int) -> CycloElem:
    return CycloElem.zeta(m, rng.randrange(m)) if m > 1 else CycloElem.rational(rng.choice((1, -1)))


def planted_case(
    rng: random.Random,
    n: int,
    q: int,
    w: int = 0,
    c: FieldEndo = FieldEndo.IDENTITY,
    with_D: bool = False,
    m: int = 1,
    adversarial: bool = False,
) -> PlantedCase:
    """A random L = N/D of numerator degree n satisfying a functional equation.

    ``with_D`` uses D = (1 - T)(1 - qT), which forces w = 0.  ``adversarial``
    plants N = 1 + beta T^n so that every middle coefficient vanishes.
    """
    if not is_prime(parse_prime_power(q)[0]):
        raise ValueError("q must be a prime power")
    if with_D and w != 0:
        raise ValueError("D = (1 - T)(1 - qT) is only self-dual for w = 0")
    Q = q ** (w + 1)
    if c is FieldEndo.IDENTITY:
        sign = lambda: CycloElem.rational(rng.choice((1, -1)))  # noqa: E731
    else:
        sign = lambda: _unit_root(rng, max(m, 4) if m in (1, 4, 8) else m)  # noqa: E731
    if adversarial:
        beta = sign() * sqrt_prime_power(Q**n) if n else _ONE
        N = [_ONE] + [_ZERO] * (n - 1) + [beta] if n else [_ONE]
    else:
        N = [_ONE]
        deg = 0
        while deg < n:
            if n - deg >= 2 and rng.random() < 0.7:
                alpha = _random_elem(rng, m)
                partner = CycloElem.rational(Q) / apply_endo(c, alpha)
                N = poly_mul(N, poly_mul([_ONE, -alpha], [_ONE, -partner]))
                deg += 2
            else:
                beta = sign() * sqrt_prime_power(Q)
                N = poly_mul(N, [_ONE, -beta])
                deg += 1
    D = [1, -(1 + q), q] if with_D else [1]
    D = as_coeffs(D)
    eps = N[n] / D[-1]
    feq = FuncEqData(D=D, n=n, q=q, w=w, c=c, epsilon=eps)
    assert poly_degree(N) == n and functional_equation_holds(N, feq)
    series = trunc_mul(N, trunc_inv(D, n), n)
    return PlantedCase(N, feq, synthetic_stratification(series, n), adversarial)
