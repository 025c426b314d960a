"""Truncated power series over a cyclotomic coefficient field."""

from __future__ import annotations

from typing import Iterable, Sequence

from .coeffield import CycloElem

__all__ = ["TruncSeries", "as_coeffs", "poly_degree", "trunc_inv", "trunc_mul"]

_ZERO = CycloElem.rational(0)
_ONE = CycloElem.rational(1)


def as_coeffs(values: Iterable) -> list[CycloElem]:
    return [CycloElem.coerce(v) for v in values]


def poly_degree(coeffs: Sequence) -> int:
    """Degree of a coefficient list, -1 for the zero polynomial."""
    for i in range(len(coeffs) - 1, -1, -1):
        if coeffs[i]:
            return i
    return -1


class TruncSeries:
    """sum_{k <= order} c_k T^k, i.e. a power series known modulo T^(order+1)."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = as_coeffs(coeffs)
        if order is None:
            order = max(len(cs) - 1, 0)
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        cs = cs[: order + 1] + [_ZERO] * (order + 1 - len(cs))
        self.coeffs = tuple(cs)
        self.order = order

    @classmethod
    def one(cls, order: int) -> "TruncSeries":
        return cls([_ONE], order)

    def __getitem__(self, k: int) -> CycloElem:
        return self.coeffs[k] if 0 <= k <= self.order else _ZERO

    def __len__(self):
        return self.order + 1

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series known to order {self.order} to {order}")
        return TruncSeries(self.coeffs[: order + 1], order)

    def __eq__(self, other):
        if isinstance(other, TruncSeries):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return trunc_mul(self, other, min(self.order, other.order))

    def __repr__(self):
        return f"TruncSeries([{', '.join(str(c) for c in self.coeffs)}], order={self.order})"

    def __str__(self):
        return series_str(self.coeffs) + f" + O(T^{self.order + 1})"


def _coeff_list(a) -> list[CycloElem]:
    if isinstance(a, TruncSeries):
        return list(a.coeffs)
    return as_coeffs(a)


def trunc_mul(a, b, order: int) -> TruncSeries:
    """The product a*b modulo T^(order+1).

    Exact polynomials of any length are accepted and truncated first; a
    TruncSeries must be known at least to the requested order.
    """
    for s in (a, b):
        if isinstance(s, TruncSeries) and s.order < order:
            raise ValueError(f"series known to order {s.order} cannot give order {order}")
    ac = _coeff_list(a)[: order + 1]
    bc = _coeff_list(b)[: order + 1]
    out = [_ZERO] * (order + 1)
    bnz = [(j, y) for j, y in enumerate(bc) if y]
    for i, x in enumerate(ac):
        if not x:
            continue
        for j, y in bnz:
            if i + j > order:
                break
            out[i + j] = out[i + j] + x * y
    return TruncSeries(out, order)


def trunc_inv(a, order: int) -> TruncSeries:
    """The inverse series modulo T^(order+1); the constant term must be a unit."""
    ac = _coeff_list(a)[: order + 1]
    if isinstance(a, TruncSeries) and a.order < order:
        raise ValueError(f"series known to order {a.order} cannot give order {order}")
    if not ac or not ac[0]:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    inv0 = ac[0].inverse()
    anz = [(j, y) for j, y in enumerate(ac) if y and j > 0]
    b = [inv0]
    for k in range(1, order + 1):
        acc = _ZERO
        for j, y in anz:
            if j > k:
                break
            if b[k - j]:
                acc = acc + y * b[k - j]
        b.append(-(acc * inv0))
    return TruncSeries(b, order)


def series_str(coeffs: Sequence, var: str = "T") -> str:
    terms = []
    for k, c in enumerate(coeffs):
        if not c:
            continue
        cs = str(c)
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if not mono:
            terms.append(cs)
        elif cs == "1":
            terms.append(mono)
        elif cs == "-1":
            terms.append("-" + mono)
        elif " " in cs:
            terms.append(f"({cs})*{mono}")
        else:
            terms.append(f"{cs}*{mono}")
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out
