import itertools
import random
import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lffc.coeffield import CycloElem
from lffc.ellfn import (
    ConstantCurveError,
    EllCurveOverFqT,
    ReductionType,
    conductor,
    constant_curve_denominator,
    denominator_from_trace,
    ell_stratification,
    local_sign,
    reduce_at_place,
    root_number,
    trace_at_good_place,
)
from lffc.ffpoly import GF, Place, parse_poly, places_of_degree
from lffc.strat import (
    alg_epsilon,
    alg_funceq,
    verify_degree_formula,
    verify_functional_equation,
    verify_riemann_hypothesis,
)

from reference_tables import ELL_TABLE as TABLE
from reference_tables import NONSPLIT, SPLIT, expected_factor

R = CycloElem.rational
F7 = GF(7)

def place(text: str, field=F7) -> Place:
    if text == "1/t":
        return Place.infinity()
    return Place.finite(parse_poly(re.sub(r"(\d)t", r"\1*t", text), field))


# -- independent oracle: count points on the long model over small residue fields


class F49:
    """F_7[i]/(i^2 + 1) as pairs; independent of the package's field code."""

    p = 7

    @staticmethod
    def elements():
        return list(itertools.product(range(7), repeat=2))

    @staticmethod
    def add(a, b):
        return ((a[0] + b[0]) % 7, (a[1] + b[1]) % 7)

    @staticmethod
    def mul(a, b):
        return ((a[0] * b[0] - a[1] * b[1]) % 7, (a[0] * b[1] + a[1] * b[0]) % 7)

    @classmethod
    def poly(cls, coeffs, x):
        out = (0, 0)
        for c in reversed(coeffs):
            out = cls.add(cls.mul(out, x), (c % 7, 0))
        return out


def long_model_trace_deg2(poly_text: str) -> int:
    # roots of the place in F_49, then count y^2 + t x y = x^3 + t^2 + 2
    pi = parse_poly(re.sub(r"(\d)t", r"\1*t", poly_text), F7)
    coeffs = [int(c) for c in pi.coeffs]
    alpha = next(x for x in F49.elements() if F49.poly(coeffs, x) == (0, 0))
    a6 = F49.poly([2, 0, 1], alpha)
    count = 1
    els = F49.elements()
    for x in els:
        rhs = F49.add(F49.mul(F49.mul(x, x), x), a6)
        for y in els:
            lhs = F49.add(F49.mul(y, y), F49.mul(F49.mul(alpha, x), y))
            count += lhs == rhs
    return 49 + 1 - count


def long_model_trace_deg1(t0: int, a=(0, 0, 0, 0, 0), p=7) -> int:
    a1, a2, a3, a4, a6 = (c(t0) % p if callable(c) else c % p for c in a)
    count = 1
    for x in range(p):
        for y in range(p):
            count += (y * y + a1 * x * y + a3 * y - (x**3 + a2 * x * x + a4 * x + a6)) % p == 0
    return p + 1 - count


# -- the worked example ---------------------------------------------------------


def test_table_rows(ell_case):
    L, _ = ell_case
    for text, a, factor in TABLE:
        v = place(text)
        data = L.reduction(v)
        assert data.a_v == a, text
        assert data.euler_factor() == expected_factor(text, factor), text
        if text in SPLIT:
            assert data.type is ReductionType.SPLIT
        elif text in NONSPLIT:
            assert data.type is ReductionType.NONSPLIT
        else:
            assert data.type is ReductionType.GOOD


def test_table_covers_all_places_of_degree_at_most_two(ell_case):
    L, _ = ell_case
    listed = {str(place(t)) for t, _, _ in TABLE}
    every = {str(v) for d in (1, 2) for v in places_of_degree(F7, d)}
    assert listed == every and len(TABLE) == 29  # 1 + 7 + 21 places


def test_table_stratification_buckets(ell_case):
    L, _ = ell_case
    # every listed a_v is nonzero, so each place sits in V_{deg v}
    assert len(L.indices(1)) == 8
    assert len(L.indices(2)) == 21
    assert all(v.degree == 3 for v in L.indices(3))
    assert all(v.degree == 4 for v in L.indices(4))


@pytest.mark.parametrize("text", ["t^2 + 1", "t^2 + 4", "t^2 + 6t + 6", "t^2 + 2t + 2"])
def test_trace_against_long_model_over_f49(ell_curve, text):
    a = trace_at_good_place(ell_curve, place(text))
    assert a == long_model_trace_deg2(text)


def test_trace_against_long_model_degree_one(ell_curve):
    for t0 in (0, 1, 2, 5, 6):
        v = Place.finite(parse_poly(f"t + {(-t0) % 7}", F7))
        oracle = long_model_trace_deg1(t0, (lambda t: t, 0, 0, 0, lambda t: t * t + 2))
        assert trace_at_good_place(ell_curve, v) == oracle


def test_trace_rejects_bad_place(ell_curve):
    with pytest.raises(ValueError, match="bad reduction"):
        trace_at_good_place(ell_curve, place("t + 3"))


def test_conductor_of_example(ell_curve):
    bad, n = conductor(ell_curve)
    assert n == 5
    assert sorted(str(d.place) for d, _ in bad) == sorted(
        ["(1/t)", "(t + 3)", "(t + 4)", "(t^2 + 2)", "(t^2 + 2*t + 3)", "(t^2 + 5*t + 3)"]
    )
    assert all(e == 1 for _, e in bad)
    with pytest.raises(ValueError, match="search bound"):
        conductor(ell_curve, search_bound=1)


def test_root_number_of_example(ell_curve, ell_case):
    L, feq = ell_case
    assert root_number(ell_curve) == R(16807)
    assert alg_epsilon(L, feq.with_epsilon(None)) == R(16807)
    N = alg_funceq(L, feq)
    assert N == [R(x) for x in (1, 0, 49, 343, 0, 16807)]
    assert verify_functional_equation(N, feq).passed
    assert verify_riemann_hypothesis(N, 7, 1).passed
    assert verify_degree_formula(N, feq).passed


# -- other curves -----------------------------------------------------------------


def test_additive_place():
    E = EllCurveOverFqT.parse(F7, a6="t")
    data = reduce_at_place(E, place("t"))
    assert data.type is ReductionType.ADDITIVE and data.cond_exp == 2
    assert data.disc_val == 2 and data.euler_factor() == [1]
    L, _ = ell_stratification(E)
    assert Place.finite(parse_poly("t", F7)) not in L.indices(1)


def test_minimalisation_at_a_place():
    # t^4 A and t^6 B are not minimal at (t); after scaling the reduction is good
    E = EllCurveOverFqT.parse(F7, a4="t^4 * (t + 1)", a6="t^6 * (t + 3)")
    data = reduce_at_place(E, place("t"))
    assert data.type is ReductionType.GOOD
    assert data.a_v == long_model_trace_deg1(0, (0, 0, 0, 1, 3))


def test_constant_curve():
    E = EllCurveOverFqT.parse(F7, a6="1")
    bad, n = conductor(E)
    assert bad == [] and n == -4
    with pytest.raises(ConstantCurveError, match="constant_curve_denominator"):
        ell_stratification(E)
    a = long_model_trace_deg1(0, (0, 0, 0, 0, 1))
    assert constant_curve_denominator(E) == denominator_from_trace(a, 7)
    E2 = EllCurveOverFqT.parse(F7, a6="2")
    a2 = long_model_trace_deg1(0, (0, 0, 0, 0, 2))
    assert constant_curve_denominator(E2, 7) == denominator_from_trace(a2, 7)
    with pytest.raises(ValueError):
        constant_curve_denominator(E2, 5)


def test_denominator_from_trace_examples():
    assert denominator_from_trace(0, 7) == [1, 0, 7 + 343, 0, 7**4]
    # (1 - 2T + 5T^2)(1 - 10T + 125T^2)
    assert denominator_from_trace(2, 5) == [1, -12, 150, -300, 625]


def test_curve_validation():
    with pytest.raises(ValueError, match="characteristic"):
        EllCurveOverFqT.parse(GF(3), a6="t")
    with pytest.raises(ValueError, match="singular"):
        EllCurveOverFqT.parse(F7)


def test_additive_sign_for_disc_valuation_six():
    # y^2 = x^3 + t^2 (t + 1) x + t^3 (t + 1): v_t(disc) = 6 at (t)
    E = EllCurveOverFqT.parse(F7, a4="t^2 * (t + 1)", a6="t^3 * (t + 1)")
    data = reduce_at_place(E, place("t"))
    assert data.type is ReductionType.ADDITIVE and data.disc_val == 6
    assert local_sign(data, F7) == -1
    L, feq = ell_stratification(E, with_epsilon=False)
    assert alg_epsilon(L, feq) == root_number(E)


# -- random curves ------------------------------------------------------------------


def random_short_curve(rng, q, max_deg=2):
    F = GF(q)
    while True:
        A = [rng.randrange(q) for _ in range(rng.randint(1, max_deg + 1))]
        B = [rng.randrange(q) for _ in range(rng.randint(1, max_deg + 1))]
        a4 = " + ".join(f"{c}*t^{i}" for i, c in enumerate(A)) or "0"
        a6 = " + ".join(f"{c}*t^{i}" for i, c in enumerate(B)) or "0"
        try:
            E = EllCurveOverFqT.parse(F, a4=a4, a6=a6)
        except ValueError:
            continue
        return E, A, B


def _eval(coeffs, t0, p):
    return sum(c * t0**i for i, c in enumerate(coeffs)) % p


@settings(max_examples=30)
@given(st.integers(0, 10**6), st.sampled_from([5, 7, 11]))
def test_hasse_bound_and_degree_one_traces(seed, q):
    E, A, B = random_short_curve(random.Random(seed), q)
    for v in places_of_degree(E.field, 1, include_infinity=False):
        data = reduce_at_place(E, v)
        if data.type is ReductionType.GOOD:
            assert data.a_v**2 <= 4 * q
            t0 = (-int(v.generator.coeffs[0])) % q
            if (4 * _eval(A, t0, q) ** 3 + 27 * _eval(B, t0, q) ** 2) % q:
                assert data.a_v == long_model_trace_deg1(t0, (0, 0, 0, _eval(A, t0, q), _eval(B, t0, q)), q)
        assert data.cond_exp == {ReductionType.GOOD: 0, ReductionType.ADDITIVE: 2}.get(data.type, 1)


def _is_square(x, p):
    return x % p == 0 or pow(x % p, (p - 1) // 2, p) == 1


def test_split_decision_against_tangent_cone():
    rng = random.Random(7)
    seen = 0
    while seen < 100:
        q = rng.choice([5, 7, 11, 13])
        E, A, B = random_short_curve(rng, q)
        for t0 in range(q):
            a, b = _eval(A, t0, q), _eval(B, t0, q)
            if a == 0 or (4 * a**3 + 27 * b**2) % q:
                continue
            v = Place.finite(parse_poly(f"t + {(-t0) % q}", E.field))
            data = reduce_at_place(E, v)
            assert data.type in (ReductionType.SPLIT, ReductionType.NONSPLIT)
            # node at x0 = -3b / (2a); tangents y = +-sqrt(3 x0) (x - x0)
            x0 = (-3 * b * pow(2 * a, -1, q)) % q
            assert (data.type is ReductionType.SPLIT) == _is_square(3 * x0, q)
            seen += 1


@pytest.mark.parametrize("seed", range(6))
def test_two_routes_to_epsilon(seed):
    rng = random.Random(seed)
    while True:
        E, _, _ = random_short_curve(rng, rng.choice([5, 7]))
        bad, n = conductor(E)
        if bad and n + 4 <= 7:
            break
    L, feq = ell_stratification(E, with_epsilon=False)
    eps = root_number(E)
    assert eps * eps == R(E.field.order ** (2 * n))
    assert alg_epsilon(L, feq) == eps
    N = alg_funceq(L, feq.with_epsilon(eps))
    if n:
        assert verify_riemann_hypothesis(N, E.field.order, 1).passed


def test_worker_pool_gives_identical_table(ell_curve):
    L1, _ = ell_stratification(ell_curve)
    L2, _ = ell_stratification(ell_curve, workers=2)
    for d in (1, 2):
        assert [L1.euler_factor(v) for v in L1.indices(d)] == [L2.euler_factor(v) for v in L2.indices(d)]
