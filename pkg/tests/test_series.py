from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lffc.coeffield import CycloElem
from lffc.series import TruncSeries, poly_degree, series_str, trunc_inv, trunc_mul

R = CycloElem.rational
z8 = CycloElem.zeta(8)


def test_inverse_of_zeta_denominator():
    inv = trunc_inv([1, -7, 18, -24], 3)
    assert inv == TruncSeries([1, 7, 31, 115], 3)


def test_geometric_series():
    assert trunc_inv([1, -1], 5) == TruncSeries([1] * 6, 5)


def test_multiplication_truncates():
    assert trunc_mul([1, 1], [1, 1], 1) == TruncSeries([1, 2], 1)
    assert trunc_mul([1, 0, 1], [1, 0, 1], 4).coeffs == tuple(map(R, [1, 0, 2, 0, 1]))


def test_series_orders_are_enforced():
    s = TruncSeries([1, 2], 1)
    with pytest.raises(ValueError):
        trunc_mul(s, [1], 3)
    with pytest.raises(ValueError):
        s.truncate(4)
    with pytest.raises(ZeroDivisionError):
        trunc_inv([0, 1], 3)


def test_str():
    assert series_str([R(1), z8, R(0), R(-3)]) == "1 + zeta8*T - 3*T^3"
    assert series_str([R(1), 1 + z8 * z8]) == "1 + (zeta8^2 + 1)*T"
    assert poly_degree([R(1), R(0)]) == 0


coeff = st.fractions(min_value=-4, max_value=4, max_denominator=3).map(R) | st.integers(0, 7).map(
    lambda e: CycloElem.zeta(8, e)
)
series = st.lists(coeff, min_size=1, max_size=7)


@given(series, st.integers(0, 8))
def test_inverse_property(cs, order):
    cs = [R(1)] + cs
    inv = trunc_inv(cs, order)
    assert trunc_mul(cs, inv, order) == TruncSeries.one(order)


@given(series, series, series, st.integers(0, 8))
def test_associative_and_commutative(a, b, c, order):
    ab = trunc_mul(a, b, order)
    assert ab == trunc_mul(b, a, order)
    assert trunc_mul(ab, c, order) == trunc_mul(a, trunc_mul(b, c, order), order)


@given(series, st.integers(0, 6), st.integers(0, 6))
def test_truncation_commutes(a, lo, extra):
    hi = lo + extra
    a = [R(Fraction(2))] + a
    assert trunc_inv(a, hi).truncate(lo) == trunc_inv(a, lo)
