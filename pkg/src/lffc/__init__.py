"""Exact L-functions over function fields from finitely many Euler factors."""

from .coeffield import CycloElem, FieldEndo
from .ffpoly import GF, FqField, FqPoly, Place, RatFunc, parse_ratfunc
from .series import TruncSeries, trunc_inv, trunc_mul
from .strat import (
    FuncEqData,
    LResult,
    Stratification,
    StratificationError,
    TableStratification,
    alg_coefficients,
    alg_epsilon,
    alg_funceq,
    alg_rationality,
    synthetic_stratification,
    verify_functional_equation,
    verify_riemann_hypothesis,
)

__version__ = "0.1.0"
