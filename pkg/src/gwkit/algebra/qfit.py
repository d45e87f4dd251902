"""Exact rational reconstruction of u-series in the variable q = -e^{iu}.

The fit is carried out in the local uniformiser ``w = 1 + q = 1 - e^{iu}``,
which vanishes to first order at ``u = 0``.  Polynomials of degree ``<= D`` in
``q`` and in ``w`` span the same space, so solving for ``P(w)/Q(w)`` is the same
problem as solving in ``q``, but in ``w`` it is a rational reconstruction from a
truncated power series, done with the extended Euclidean algorithm.  Every
coefficient not needed to pin down the fit is checked ("spare").

Coefficients that depend on t1, t2 are split into components over Q(i) (a
common denominator times the monomials of the numerators) and each component is
fitted separately.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

import sympy
from sympy import Poly, QQ_I

from .ratfunc import RatFunc, _from_domain, _from_sympy_poly, _to_domain, _to_sympy_poly, ONE_KEY
from .scalars import Q, I
from .series import TruncatedSeries, exp_series, series_from_u

__all__ = ["RationalFitResult", "FitUnderdetermined", "fit_rational_in_q", "q_series"]


class FitUnderdetermined(ValueError):
    """Too few series coefficients to overdetermine the requested fit."""


@dataclass(frozen=True)
class RationalFitResult:
    """``numerator(q)/denominator(q)``, coefficient lists in ascending powers of q."""

    numerator: tuple
    denominator: tuple
    matched_coefficient_count: int
    residual_flag: bool
    spare_count: int = 0
    degree: int = 0
    u_offset: int = 0
    notes: tuple = field(default=())

    def expand(self, u_order: int) -> TruncatedSeries:
        """Re-expand the fitted function as a u-series up to ``u^(u_order-1)``."""
        q = q_series(u_order + 2 * max(len(self.denominator), 1))
        num = _poly_in_series(self.numerator, q)
        den = _poly_in_series(self.denominator, q)
        return (num / den).truncate(u_order)


def q_series(u_order: int) -> TruncatedSeries:
    """The u-expansion of q = -e^{iu}."""
    return exp_series(I, u_order).scale(Q(-1))


def _poly_in_series(coeffs, x: TruncatedSeries) -> TruncatedSeries:
    out = TruncatedSeries.constant(Q(0), x.u_order)
    power = TruncatedSeries.constant(Q(1), x.u_order)
    for c in coeffs:
        if c:
            out = out + power.scale(c)
        power = power * x
    return out


# --------------------------------------------------------------------------
# u -> w change of variables
# --------------------------------------------------------------------------
_ELL_CACHE: dict = {}


def _ell_power(k: int, n: int) -> list:
    """Coefficients of l(w)^k mod w^n, where -log(1-w) = w * l(w)."""
    got = _ELL_CACHE.get(k)
    if got is not None and len(got) >= n:
        return got
    ell = [Q(1, j + 1) for j in range(n)]
    if k == 0:
        res = [Q(1)] + [Q(0)] * (n - 1)
    elif k > 0:
        prev = _ell_power(k - 1, n)
        res = _mul_trunc(prev, ell, n)
    else:
        inv = _inv_trunc(ell, n)
        prev = _ell_power(k + 1, n)
        res = _mul_trunc(prev, inv, n)
    _ELL_CACHE[k] = res
    return res


def _mul_trunc(a, b, n):
    out = [Q(0)] * n
    for i in range(min(len(a), n)):
        ai = a[i]
        if not ai:
            continue
        for j in range(min(len(b), n - i)):
            out[i + j] += ai * b[j]
    return out


def _inv_trunc(a, n):
    out = [Q(0)] * n
    out[0] = Q(1) / a[0]
    for m in range(1, n):
        s = Q(0)
        for j in range(1, min(m, len(a) - 1) + 1):
            s += a[j] * out[m - j]
        out[m] = -s * out[0]
    return out


def _to_w(coeffs: list, offset: int) -> list:
    """Given f = sum coeffs[j] u^(offset+j) mod u^(offset+M), return g with f = w^offset * sum g_j w^j."""
    m = len(coeffs)
    g = [Q(0)] * m
    ipow = {0: Q(1), 1: I, 2: Q(-1), 3: -I}
    for j, c in enumerate(coeffs):
        if not c:
            continue
        k = offset + j
        lk = _ell_power(k, m)
        ck = c * ipow[k % 4]
        # u^k = i^k w^k l^k ; contributes to w^(offset + j + t) for t >= 0
        for t in range(m - j):
            if lk[t]:
                g[j + t] += ck * lk[t]
    return g


# --------------------------------------------------------------------------
# polynomials in q
# --------------------------------------------------------------------------
def _w_to_q(ws: list) -> list:
    """Rewrite sum ws[j] w^j with w = 1 + q as coefficients in q."""
    out = [Q(0)] * len(ws)
    for j, c in enumerate(ws):
        if c:
            for t in range(j + 1):
                out[t] += c * comb(j, t)
    return out


def _trim(p: list) -> list:
    p = list(p)
    while len(p) > 1 and not p[-1]:
        p.pop()
    return p


def _fit_component(coeffs: list, offset: int, max_degree: int, min_spare: int):
    """Fit one Q(i)-valued u-series; returns (num_w_factored, den, matched, spare, ok, degree)."""
    m = len(coeffs)
    # strip leading zeros: the true valuation gives the smallest systems
    lead = next((j for j, c in enumerate(coeffs) if c), None)
    if lead is None:
        return [Q(0)], [Q(1)], m, m - 1, True, 0
    v = offset + lead
    g = _to_w(coeffs[lead:], v)
    big_m = len(g)

    def unknowns(d):
        return (d - max(v, 0)) + (d - max(-v, 0)) + 1

    top = max_degree
    while top >= 0 and big_m < unknowns(top) + max(min_spare, 1):
        top -= 1
    best = None
    for r, t in _euclid_remainders(g, big_m):
        # deg t only grows along the sequence, so later steps cannot do better
        if len(t) - 1 + max(-v, 0) > (top if best is None else best[0]):
            break
        if not t[0]:
            continue
        d = max(len(r) - 1 + max(v, 0), len(t) - 1 + max(-v, 0))
        if d <= top and (best is None or d < best[0]):
            best = (d, r, t)
    if best is None:
        if top < max_degree:
            d = top + 1
            raise FitUnderdetermined(
                f"degree {d} fit needs u_order >= {offset + lead + unknowns(d) + max(min_spare, 1)} "
                f"(have {offset + m})")
        return None, None, 0, 0, False, max_degree
    d, r, t = best
    inv = Q(1) / t[0]
    ps, qs = [c * inv for c in r], [c * inv for c in t]
    num_w = [Q(0)] * max(v, 0) + ps
    den_w = [Q(0)] * max(-v, 0) + qs
    return _w_to_q(num_w), _w_to_q(den_w), m, big_m - unknowns(d), True, d


def _euclid_remainders(g: list, n: int):
    """Yield (r_i, t_i) of the extended Euclidean algorithm on (w^n, g): t_i g = r_i mod w^n.

    Every pair (P, Q) with Q g = P mod w^n and deg P + deg Q < n is a polynomial
    multiple of one of these, so they contain all minimal rational fits.
    """
    g = _trim(list(g))
    r0, r1 = [Q(0)] * n + [Q(1)], [c / g[-1] for c in g]
    t0, t1 = [Q(0)], [Q(1) / g[-1]]
    while any(r1):
        yield r1, t1
        quo, rem = _divmod(r0, r1)
        t_next = _trim(_poly_add(t0, [-c for c in _poly_mul(quo, t1)]))
        if any(rem):
            # monic remainders keep the coefficient sizes in check
            inv = Q(1) / rem[-1]
            rem, t_next = [c * inv for c in rem], [c * inv for c in t_next]
        r0, r1 = r1, rem
        t0, t1 = t1, t_next


def _divmod(a: list, b: list):
    a = list(a)
    db = len(b) - 1
    inv = Q(1) / b[-1]
    quo = [Q(0)] * max(len(a) - db, 1)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if not c:
            continue
        f = c * inv
        quo[k - db] = f
        for j in range(db + 1):
            if b[j]:
                a[k - db + j] = a[k - db + j] - f * b[j]
    rem = _trim(a[:db]) if db > 0 else [Q(0)]
    return quo, rem


def _split_components(coeffs: list):
    """Write coeffs = sum_j mult_j * comp_j with mult_j scalars and comp_j over Q(i)."""
    if not any(isinstance(c, RatFunc) for c in coeffs):
        return [(Q(1), coeffs)]
    dens = [_to_sympy_poly(c.den) for c in coeffs if isinstance(c, RatFunc)]
    common = dens[0]
    for d in dens[1:]:
        common = common.lcm(d)
    comps: dict = {}
    n = len(coeffs)
    for idx, c in enumerate(coeffs):
        if not c:
            continue
        if isinstance(c, RatFunc):
            num = _to_sympy_poly(c.num) * common.exquo(_to_sympy_poly(c.den))
            terms = _from_sympy_poly(num)
        else:
            terms = _from_sympy_poly(common * _to_sympy_poly({ONE_KEY: c}))
        for mono, val in terms.items():
            comps.setdefault(mono, [Q(0)] * n)[idx] = val
    common_d = _from_sympy_poly(common)
    out = []
    for mono in sorted(comps):
        mult = RatFunc.make({mono: Q(1)}, common_d)
        out.append((mult, comps[mono]))
    return out


def _q_poly(p: list) -> Poly:
    q = sympy.Symbol("q")
    return Poly.from_list([_to_domain(c) for c in reversed(p)], q, domain=QQ_I)


def _from_q_poly(p: Poly) -> list:
    return [_from_domain(c) for c in reversed(p.rep.to_list())] if not p.is_zero else [Q(0)]


def fit_rational_in_q(series: TruncatedSeries, max_degree: int, min_spare: int = 1,
                      q_substitution: str = "q = -e^{iu}") -> RationalFitResult:
    """Fit a u-series (no auxiliary dependence) as a rational function of q = -e^{iu}.

    Tries total degrees 0..max_degree and returns the first fit that reproduces
    every available coefficient.  ``residual_flag`` is true when no degree up to
    ``max_degree`` works.  Raises :class:`FitUnderdetermined` when the window is too
    short to leave ``min_spare`` unused coefficients at some degree tried.
    """
    if q_substitution.replace(" ", "") not in ("q=-e^{iu}", "q=-exp(iu)"):
        raise ValueError("only the substitution q = -e^{iu} is supported")
    if series.nvars and any(any(m) for m in series.monomials()):
        raise ValueError("series depends on auxiliary variables; fit one monomial at a time")
    offset = series.u_offset
    coeffs = series.u_coefficients((0,) * series.nvars)
    comps = _split_components(coeffs)
    fits = []
    for mult, comp in comps:
        num, den, matched, spare, ok, deg = _fit_component(comp, offset, max_degree, min_spare)
        if not ok:
            return RationalFitResult((), (), 0, True, 0, max_degree, offset,
                                     (f"no fit up to degree {max_degree}",))
        fits.append((mult, num, den, matched, spare, deg))
    if len(fits) == 1 and fits[0][0] == 1:
        _, num, den, matched, spare, deg = fits[0]
        num, den = _normalize(_trim(num), _trim(den))
        return RationalFitResult(num, den, matched, False, spare, deg, offset)
    # combine components over a common denominator
    dens = [_q_poly(_trim(f[2])).monic() for f in fits]
    common = dens[0]
    for d in dens[1:]:
        common = common.lcm(d)
    total_num = [Q(0)]
    for (mult, num, den, *_), dpoly in zip(fits, dens):
        lead = _trim(den)[-1]
        factor = _from_q_poly(common.exquo(dpoly))
        part = _poly_mul([c / lead for c in _trim(num)], factor)
        part = [c * mult for c in part]
        total_num = _poly_add(total_num, part)
    matched = min(f[3] for f in fits)
    spare = min(f[4] for f in fits)
    deg = max(f[5] for f in fits)
    num, den = _normalize(_trim(total_num), _from_q_poly(common))
    return RationalFitResult(num, den, matched, False,
                             spare, deg, offset, (f"{len(fits)} Q(i)-components fitted separately",))


def _normalize(num, den):
    c = next(x for x in den if x)
    inv = Q(1) / c
    return tuple(x * inv for x in num), tuple(x * inv for x in den)


def _poly_mul(a, b):
    out = [Q(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def _poly_add(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
