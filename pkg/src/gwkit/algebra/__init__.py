"""Exact scalars over Q(i)(t1, t2) and truncated series."""

from .scalars import Q, I, GaussRational, gauss
from .ratfunc import RatFunc, T1, T2, parse_scalar, scalar_to_str
from .series import TruncatedSeries, WindowError, s_function, exp_series, series_from_u
from .qfit import RationalFitResult, FitUnderdetermined, fit_rational_in_q, q_series
from .special import g_series, todd_series

__all__ = [
    "Q", "I", "GaussRational", "gauss",
    "RatFunc", "T1", "T2", "parse_scalar", "scalar_to_str",
    "TruncatedSeries", "WindowError", "s_function", "exp_series", "series_from_u",
    "RationalFitResult", "FitUnderdetermined", "fit_rational_in_q", "q_series",
    "g_series", "todd_series", "series_arith",
]


def series_arith(lhs: TruncatedSeries, rhs, op: str) -> TruncatedSeries:
    """Dispatch ``add``, ``sub``, ``mul``, ``div``, ``differentiate_u`` or ``s_log_derivative(k)``."""
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    if op == "div":
        return lhs / rhs
    if op == "differentiate_u":
        return lhs.differentiate_u()
    if op.startswith("s_log_derivative"):
        k = int(op[op.index("(") + 1:op.index(")")]) if "(" in op else int(rhs)
        return lhs.s_log_derivative(k - 1)
    raise ValueError(f"unknown series operation {op!r}")
