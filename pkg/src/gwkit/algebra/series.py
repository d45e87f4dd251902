"""Truncated Laurent series in u tensored with truncated power series in s-variables.

A :class:`TruncatedSeries` stores ``{(k, mono): coeff}`` where ``k`` is the power
of ``u`` and ``mono`` the exponent tuple of the auxiliary variables (``s1..sn``
or ``z1..zr``).  Every value carries its window: powers ``u_offset <= k <
u_order`` and total auxiliary degree ``<= s_cap``.  Results of arithmetic carry
the window that is guaranteed correct, so precision loss is never silent.
"""

from __future__ import annotations

from itertools import product as _product
from math import factorial
from typing import Iterable

from .scalars import Q, I, gauss

__all__ = ["TruncatedSeries", "WindowError", "s_function", "exp_series", "series_from_u"]


class WindowError(ValueError):
    """Raised when an operation would produce an empty truncation window."""


def _mono_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


class TruncatedSeries:
    __slots__ = ("coeffs", "u_offset", "u_order", "s_cap", "names")

    def __init__(self, coeffs: dict, u_order: int, u_offset: int | None = None,
                 s_cap: int = 0, names: Iterable[str] = ()):
        self.names = tuple(names)
        self.u_order = int(u_order)
        self.s_cap = int(s_cap)
        n = len(self.names)
        clean = {}
        low = None
        for (k, mono), c in coeffs.items():
            if not c:
                continue
            if len(mono) != n:
                raise ValueError(f"monomial {mono} does not match variables {self.names}")
            if k >= self.u_order or sum(mono) > self.s_cap:
                continue
            clean[(k, tuple(mono))] = c
            low = k if low is None else min(low, k)
        if u_offset is None:
            u_offset = min(low, self.u_order) if low is not None else min(0, self.u_order)
        if low is not None and low < u_offset:
            raise ValueError(f"term u^{low} lies below the declared offset {u_offset}")
        if self.u_order < u_offset:
            raise WindowError(f"empty window: u_order {self.u_order} < u_offset {u_offset}")
        self.u_offset = int(u_offset)
        self.coeffs = clean

    # -- construction helpers ------------------------------------------------
    @classmethod
    def constant(cls, c, u_order: int, s_cap: int = 0, names=()):
        n = len(tuple(names))
        return cls({(0, (0,) * n): c}, u_order, 0, s_cap, names)

    @classmethod
    def monomial(cls, c, k: int, mono=(), u_order: int = 1, s_cap: int = 0, names=()):
        return cls({(k, tuple(mono)): c}, u_order, min(k, u_order), s_cap, names)

    def _new(self, coeffs, u_order, u_offset, s_cap=None, names=None):
        return TruncatedSeries(coeffs, u_order, u_offset,
                               self.s_cap if s_cap is None else s_cap,
                               self.names if names is None else names)

    # -- accessors -----------------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.names)

    def coefficient(self, k: int, mono=None):
        if mono is None:
            mono = (0,) * self.nvars
        if not (self.u_offset <= k < self.u_order) or sum(mono) > self.s_cap:
            if k < self.u_offset:
                return Q(0)
            raise WindowError(f"coefficient u^{k} {mono} lies outside the window")
        return self.coeffs.get((k, tuple(mono)), Q(0))

    def u_coefficients(self, mono=None) -> list:
        """Coefficients of ``u^offset .. u^(order-1)`` at one auxiliary monomial."""
        if mono is None:
            mono = (0,) * self.nvars
        mono = tuple(mono)
        return [self.coeffs.get((k, mono), Q(0)) for k in range(self.u_offset, self.u_order)]

    def monomials(self) -> list:
        """Auxiliary monomials carrying a nonzero coefficient, sorted lexicographically."""
        return sorted({m for (_, m) in self.coeffs})

    def at_monomial(self, mono) -> "TruncatedSeries":
        """The u-series multiplying one auxiliary monomial."""
        mono = tuple(mono)
        return TruncatedSeries({(k, ()): c for (k, m), c in self.coeffs.items() if m == mono},
                               self.u_order, self.u_offset, 0, ())

    def items(self):
        """Terms in canonical order: u ascending, then auxiliary monomial lexicographic."""
        return sorted(self.coeffs.items(), key=lambda kv: (kv[0][0], kv[0][1]))

    def valuation(self):
        if not self.coeffs:
            return None
        return min(k for (k, _) in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    # -- alignment -----------------------------------------------------------
    def with_names(self, names) -> "TruncatedSeries":
        names = tuple(names)
        if names == self.names:
            return self
        if self.nvars == 0:
            z = (0,) * len(names)
            return TruncatedSeries({(k, z): c for (k, _), c in self.coeffs.items()},
                                   self.u_order, self.u_offset, _BIG, names)
        raise ValueError(f"incompatible variables {self.names} and {names}")

    def _align(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(other, _BIG, _BIG, self.names)
            return self, other
        if self.names == other.names:
            return self, other
        if self.nvars == 0:
            return self.with_names(other.names), other
        if other.nvars == 0:
            return self, other.with_names(self.names)
        raise ValueError(f"incompatible variables {self.names} and {other.names}")

    # -- ring operations -----------------------------------------------------
    def __add__(self, other):
        a, b = self._align(other)
        out = dict(a.coeffs)
        for key, c in b.coeffs.items():
            w = out.get(key, 0) + c
            if w:
                out[key] = w
            else:
                out.pop(key, None)
        return TruncatedSeries(out, min(a.u_order, b.u_order), min(a.u_offset, b.u_offset),
                               min(a.s_cap, b.s_cap), a.names)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -c for k, c in self.coeffs.items()}, self.u_order, self.u_offset)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "TruncatedSeries":
        if not c:
            return self._new({}, self.u_order, self.u_offset)
        return self._new({k: v * c for k, v in self.coeffs.items()}, self.u_order, self.u_offset)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        a, b = self._align(other)
        order = min(a.u_order + b.u_offset, b.u_order + a.u_offset)
        cap = min(a.s_cap, b.s_cap)
        out: dict = {}
        bitems = list(b.coeffs.items())
        for (k1, m1), c1 in a.coeffs.items():
            d1 = sum(m1)
            for (k2, m2), c2 in bitems:
                k = k1 + k2
                if k >= order or d1 + sum(m2) > cap:
                    continue
                key = (k, _mono_add(m1, m2))
                w = out.get(key, 0) + c1 * c2
                if w:
                    out[key] = w
                else:
                    out.pop(key, None)
        return TruncatedSeries(out, order, a.u_offset + b.u_offset, cap, a.names)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = TruncatedSeries.constant(Q(1), _BIG, _BIG, self.names)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        if result.u_order >= _BIG:
            rel = max(self.u_order - self.u_offset, 1)
            return TruncatedSeries(result.coeffs, rel, 0, self.s_cap, self.names)
        return result

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; needs an invertible lowest-order constant coefficient."""
        v = self.valuation()
        zero = (0,) * self.nvars
        if v is None or (v, zero) not in self.coeffs:
            raise ZeroDivisionError("series has no invertible leading coefficient")
        if any(k < v for (k, _) in self.coeffs):
            raise ZeroDivisionError("series has no invertible leading coefficient")
        c0 = self.coeffs[(v, zero)]
        inv0 = Q(1) / c0
        # self = c0 u^v (1 - X), X without constant term
        rel_order = self.u_order - v
        xs = {}
        for (k, m), c in self.coeffs.items():
            if (k, m) == (v, zero):
                continue
            xs[(k - v, m)] = -c * inv0
        X = TruncatedSeries(xs, rel_order, 0, self.s_cap, self.names)
        one = TruncatedSeries.constant(Q(1), rel_order, self.s_cap, self.names)
        total = one
        power = one
        for _ in range(rel_order + self.s_cap + 1):
            power = power * X
            if power.is_zero():
                break
            total = total + power
        coeffs = {(k - v, m): c * inv0 for (k, m), c in total.coeffs.items()}
        return TruncatedSeries(coeffs, rel_order - v, -v, self.s_cap, self.names)

    def __truediv__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(Q(1) / other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse().scale(other)

    # -- calculus and substitutions -------------------------------------------
    def differentiate_u(self) -> "TruncatedSeries":
        out = {(k - 1, m): c * k for (k, m), c in self.coeffs.items() if k != 0}
        order = self.u_order - 1
        offset = self.u_offset - 1 if self.u_offset != 0 else 0
        if order <= offset:
            raise WindowError("differentiation leaves an empty window")
        return self._new(out, order, offset)

    def s_log_derivative(self, index: int) -> "TruncatedSeries":
        """Apply ``s_k d/ds_k`` (``index`` is zero-based)."""
        if not 0 <= index < self.nvars:
            raise IndexError(f"no auxiliary variable with index {index}")
        out = {(k, m): c * m[index] for (k, m), c in self.coeffs.items() if m[index]}
        return self._new(out, self.u_order, self.u_offset)

    def shift_u(self, n: int) -> "TruncatedSeries":
        """Multiply by ``u^n``."""
        return self._new({(k + n, m): c for (k, m), c in self.coeffs.items()},
                         self.u_order + n, self.u_offset + n)

    def rescale_u(self, factor) -> "TruncatedSeries":
        """Substitute ``u -> factor * u``."""
        return self._new({(k, m): c * factor ** k for (k, m), c in self.coeffs.items()},
                         self.u_order, self.u_offset)

    def truncate(self, u_order: int | None = None, s_cap: int | None = None) -> "TruncatedSeries":
        u_order = self.u_order if u_order is None else min(u_order, self.u_order)
        s_cap = self.s_cap if s_cap is None else min(s_cap, self.s_cap)
        return TruncatedSeries(self.coeffs, u_order, min(self.u_offset, u_order), s_cap, self.names)

    def map_coefficients(self, fn) -> "TruncatedSeries":
        return self._new({k: fn(c) for k, c in self.coeffs.items()}, self.u_order, self.u_offset)

    def tighten(self) -> "TruncatedSeries":
        """Raise the declared offset to the true valuation (all window coefficients are known)."""
        v = self.valuation()
        v = self.u_order if v is None else v
        return self._new(self.coeffs, self.u_order, max(self.u_offset, min(v, self.u_order)))

    def divide_by_u(self, n: int = 1) -> "TruncatedSeries":
        """Divide by ``u^n``, keeping the offset as tight as the known coefficients allow."""
        return self.tighten().shift_u(-n)

    # -- comparison ----------------------------------------------------------
    def agrees_with(self, other: "TruncatedSeries") -> bool:
        """Coefficientwise equality on the common window."""
        a, b = self._align(other)
        order = min(a.u_order, b.u_order)
        cap = min(a.s_cap, b.s_cap)
        keys = {k for k in a.coeffs if k[0] < order and sum(k[1]) <= cap}
        keys |= {k for k in b.coeffs if k[0] < order and sum(k[1]) <= cap}
        return all(a.coeffs.get(k, 0) == b.coeffs.get(k, 0) for k in keys)

    def first_disagreement(self, other: "TruncatedSeries"):
        a, b = self._align(other)
        order = min(a.u_order, b.u_order)
        cap = min(a.s_cap, b.s_cap)
        keys = {k for k in a.coeffs if k[0] < order and sum(k[1]) <= cap}
        keys |= {k for k in b.coeffs if k[0] < order and sum(k[1]) <= cap}
        for k in sorted(keys):
            if a.coeffs.get(k, 0) != b.coeffs.get(k, 0):
                return k, a.coeffs.get(k, Q(0)), b.coeffs.get(k, Q(0))
        return None

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.agrees_with(other)
        if not other:
            return self.is_zero()
        return self.agrees_with(TruncatedSeries.constant(other, self.u_order, self.s_cap, self.names))

    __hash__ = None

    def __repr__(self):
        terms = " + ".join(f"({c})*{_term_name(k, m, self.names)}" for (k, m), c in self.items()[:8])
        more = " + ..." if len(self.coeffs) > 8 else ""
        return (f"TruncatedSeries({terms or '0'}{more}; u in [{self.u_offset},{self.u_order}), "
                f"cap {self.s_cap})")


_BIG = 1 << 30


def _term_name(k, mono, names):
    parts = []
    if k:
        parts.append(f"u^{k}")
    for name, e in zip(names, mono):
        if e:
            parts.append(f"{name}^{e}")
    return "*".join(parts) or "1"


def series_from_u(coeffs: dict, u_order: int, u_offset: int | None = None) -> TruncatedSeries:
    """Build a pure u-series from ``{power: coeff}``."""
    return TruncatedSeries({(k, ()): c for k, c in coeffs.items()}, u_order, u_offset)


def s_function(arg_multiplier: int, convention: str = "sin", u_order: int = 8) -> TruncatedSeries:
    """S(k u) with S(u) = sin(u/2)/(u/2) (``sin``) or sinh(u/2)/(u/2) (``sinh``)."""
    if u_order < 0:
        raise ValueError("u_order must be nonnegative")
    if convention not in ("sin", "sinh"):
        raise ValueError(f"unknown convention {convention!r}")
    half = Q(arg_multiplier, 2)
    coeffs = {}
    for j in range(0, (u_order + 1) // 2):
        c = half ** (2 * j) / factorial(2 * j + 1)
        if convention == "sin" and j % 2:
            c = -c
        coeffs[2 * j] = c
    return series_from_u(coeffs, u_order, 0)


def exp_series(multiplier, u_order: int) -> TruncatedSeries:
    """exp(multiplier * u), multiplier any scalar (e.g. ``I`` for e^{iu})."""
    coeffs = {}
    power = Q(1)
    for k in range(u_order):
        coeffs[k] = power / factorial(k)
        power = power * multiplier
    return series_from_u(coeffs, u_order, 0)
