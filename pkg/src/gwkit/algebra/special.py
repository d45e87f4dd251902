"""Special series: the G(w, z) series with the Hodge-theoretic substitution."""

from __future__ import annotations

from math import factorial

from .scalars import Q, I
from .series import TruncatedSeries, series_from_u

__all__ = ["todd_series", "g_series"]


def todd_series(multiplier, u_order: int) -> TruncatedSeries:
    """x/(1 - e^{-x}) at x = multiplier * u."""
    n = u_order + 1
    # (1 - e^{-x})/x = sum_k (-1)^k x^k/(k+1)!
    base = series_from_u({k: Q((-1) ** k, factorial(k + 1)) for k in range(n)}, n, 0)
    return base.inverse().rescale_u(multiplier).truncate(u_order)


def _inverse_rising(m: int, z_order: int) -> list:
    """Coefficients in z of 1/((z+1)(z+2)...(z+m)) up to z^z_order."""
    out = [Q(1, factorial(m))] + [Q(0)] * z_order
    for j in range(1, m + 1):
        # multiply by 1/(1 + z/j) = sum (-z/j)^k
        geo = [Q(-1, j) ** k for k in range(z_order + 1)]
        new = [Q(0)] * (z_order + 1)
        for a, x in enumerate(out):
            if x:
                for b in range(z_order + 1 - a):
                    new[a + b] += x * geo[b]
        out = new
    return out


def g_series(z_order: int, u_order: int, branch_sign: str, d: int = 1) -> TruncatedSeries:
    """G(w, z) = sum_{m>=1} w^m / (z(z+1)...(z+m)) at w = +-i d z u / (1 - e^{-+ i d u}).

    The substitution equals ``w = z * B(+-i d u)`` with ``B(x) = x/(1-e^{-x})``;
    the factor ``z`` cancels the pole of each term, leaving a power series in
    ``z`` (variable name ``"z"``, total degree capped at ``z_order``) and ``u``.
    """
    if z_order < 0 or u_order < 0 or d < 1:
        raise ValueError("orders must be nonnegative and d >= 1")
    if branch_sign not in ("+", "-"):
        raise ValueError("branch_sign is '+' or '-'")
    sign = 1 if branch_sign == "+" else -1
    b = todd_series(I * sign * d, u_order)
    total = TruncatedSeries({}, u_order, 0, z_order, ("z",))
    bpow = b
    for m in range(1, z_order + 2):
        rising = _inverse_rising(m, z_order)
        zpart = {(0, (m - 1 + k,)): c for k, c in enumerate(rising) if m - 1 + k <= z_order and c}
        zs = TruncatedSeries(zpart, u_order, 0, z_order, ("z",))
        total = total + bpow * zs
        bpow = bpow * b
    return total
