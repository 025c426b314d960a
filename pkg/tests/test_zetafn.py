import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_rem

from lffc.coeffield import CycloElem
from lffc.ffpoly import GF, FqPoly
from lffc.strat import (
    alg_epsilon,
    alg_funceq,
    alg_rationality,
    verify_functional_equation,
    verify_riemann_hypothesis,
)
from lffc.zetafn import (
    HyperellipticModel,
    place_count_consistency,
    places_by_degree,
    point_counts,
    zeta_stratification,
)

R = CycloElem.rational


def brute_counts(p: int, f: list[int], r: int) -> list[int]:
    """Point counts of u^2 = f(t) by enumerating F_{p^i} = F_p[x]/(m) with sympy."""
    out = []
    for i in range(1, r + 1):
        m = next(
            [1] + list(tail)
            for tail in _tuples(p, i)
            if gf_irreducible_p([1] + list(tail), p, ZZ)
        )
        elems = [list(e) for e in _tuples(p, i)]
        norm = lambda e: gf_rem(_strip(e), m, p, ZZ)  # noqa: E731
        squares = {}
        for e in elems:
            key = tuple(norm(gf_mul(_strip(e), _strip(e), p, ZZ)))
            squares[key] = squares.get(key, 0) + 1
        total = 0
        for e in elems:
            val = []
            for c in f:  # Horner, f given high degree first
                val = gf_rem(gf_mul(val, _strip(e), p, ZZ), m, p, ZZ)
                val = _add(val, [c % p], p)
            total += squares.get(tuple(val), 0)
        deg = len(f) - 1
        if deg % 2:
            total += 1
        else:
            lc_square = pow(f[0] % p, (p - 1) // 2, p) == 1
            total += 2 if (lc_square or i % 2 == 0) else 0
        out.append(total)
    return out


def _tuples(p, n):
    if n == 0:
        yield ()
        return
    for head in range(p):
        for rest in _tuples(p, n - 1):
            yield (head,) + rest


def _strip(e):
    e = list(e)
    while e and e[0] == 0:
        e.pop(0)
    return e


def _add(a, b, p):
    n = max(len(a), len(b))
    a = [0] * (n - len(a)) + list(a)
    b = [0] * (n - len(b)) + list(b)
    return _strip([(x + y) % p for x, y in zip(a, b)])


def test_genus3_fixture_counts(genus3_curve):
    assert point_counts(genus3_curve, 3) == [7, 13, 37]
    assert places_by_degree(genus3_curve, 3) == [7, 3, 10]
    assert brute_counts(3, [1, 0, 0, 0, 0, 0, -1, 1], 3) == [7, 13, 37]


def test_genus3_fixture_numerator(zeta_case):
    L, feq = zeta_case
    assert feq.n == 6 and feq.epsilon == R(9)
    assert alg_funceq(L, feq) == [R(x) for x in (1, 3, 6, 12, 18, 27, 27)]


def test_small_curves():
    F3 = GF(3)
    C = HyperellipticModel.parse(F3, "t")
    assert C.genus == 0
    assert point_counts(C, 1) == [4]
    assert places_by_degree(F3, 2) == [4, 3]
    assert places_by_degree(GF(7), 2) == [8, 21]


def test_projective_line_has_trivial_numerator():
    L, feq = zeta_stratification(GF(7))
    assert feq.n == 0 and feq.epsilon == R(1) / 7
    assert alg_funceq(L, feq) == [R(1)]
    assert alg_rationality(L, feq.D, 1, 3, 3).coeffs == (R(1),) + (R(0),) * 3


def test_genus_one_numerator_matches_trace():
    C = HyperellipticModel.parse(GF(5), "t^3 + t + 1")
    a1 = point_counts(C, 1)[0]
    L, feq = zeta_stratification(C)
    assert alg_funceq(L, feq) == [R(1), R(a1 - 6), R(5)]


def test_even_degree_model():
    F5 = GF(5)
    C = HyperellipticModel.parse(F5, "2*t^4 + t^2 + t + 1")
    f = [2, 0, 1, 1, 1]
    assert point_counts(C, 3) == brute_counts(5, f, 3)
    L, feq = zeta_stratification(C)
    N = alg_funceq(L, feq)
    assert verify_riemann_hypothesis(N, 5, 0).passed
    assert verify_functional_equation(N, feq).passed


def test_model_validation():
    with pytest.raises(ValueError, match="odd characteristic"):
        HyperellipticModel.parse(GF(2), "t^3 + t + 1")
    with pytest.raises(ValueError, match="square-free"):
        HyperellipticModel.parse(GF(3), "t^3 + 2*t^2 + t")
    with pytest.raises(ValueError):
        HyperellipticModel.parse(GF(3), "2")


def test_extension_field_base():
    F9 = GF(9)
    C = HyperellipticModel(F9, FqPoly(F9, [1, 1, 0, 1]))
    L, feq = zeta_stratification(C)
    N = alg_funceq(L, feq)
    assert verify_riemann_hypothesis(N, 9, 0).passed
    assert sum(N) == R(place_class_number(C))


def place_class_number(C):
    # h = N(1) = |Jac(F_q)|; for genus 1 it equals #C(F_q)
    return point_counts(C, 1)[0]


def random_model(rng, q, deg):
    F = GF(q)
    while True:
        coeffs = [F.coerce(rng.randrange(q)) for _ in range(deg)] + [F.coerce(1 + rng.randrange(q - 1))]
        try:
            return HyperellipticModel(F, FqPoly(F, coeffs))
        except ValueError:
            continue


@settings(max_examples=25)
@given(st.integers(0, 10**6), st.sampled_from([3, 5, 7]), st.sampled_from([3, 4, 5, 6]))
def test_random_curves(seed, q, deg):
    C = random_model(random.Random(seed), q, deg)
    g = C.genus
    a = point_counts(C, max(g, 1))
    b = places_by_degree(C, max(g, 1))
    assert place_count_consistency(a, b)
    L, feq = zeta_stratification(C)
    N = alg_funceq(L, feq)
    assert len(N) == 2 * g + 1
    assert list(alg_rationality(L, feq.D, 1, 2 * g, 2 * g).coeffs) == N
    assert verify_functional_equation(N, feq).passed
    assert verify_riemann_hypothesis(N, q, 0).passed
    if g:
        assert alg_epsilon(L, feq.with_epsilon(None)) == R(q ** (g - 1))


@pytest.mark.parametrize("q,f", [(3, [1, 0, 1, 2]), (5, [1, 0, 0, 2, 0, 1]), (7, [3, 1, 0, 5])])
def test_counts_against_brute_force(q, f):
    F = GF(q)
    C = HyperellipticModel(F, FqPoly(F, [F.coerce(c) for c in reversed(f)]))
    assert point_counts(C, 2) == brute_counts(q, f, 2)


def test_place_count_consistency_detects_mismatch():
    assert place_count_consistency([4, 10], [4, 3])
    assert not place_count_consistency([4, 11], [4, 3])
