"""Polynomials and rational functions in the equivariant parameters t1, t2.

Polynomials are plain dicts ``{(e1, e2): coeff}`` with Gaussian-rational
coefficients.  :class:`RatFunc` keeps numerator and denominator coprime, with
the denominator monic in its lexicographically largest monomial, so equality is
a comparison of canonical forms.  The multivariate gcd is delegated to sympy.
"""

from __future__ import annotations

from functools import reduce
from math import gcd, lcm

import sympy
from sympy import QQ, QQ_I, Poly

from .scalars import Q, GaussRational, gauss, scalar_str, _RATIONAL_TYPES

__all__ = ["RatFunc", "T1", "T2", "poly_ratfunc", "parse_scalar", "scalar_to_str", "is_ratfunc"]

_T = sympy.symbols("t1 t2")
ONE_KEY = (0, 0)


# --------------------------------------------------------------------------
# dict polynomials
# --------------------------------------------------------------------------
def _padd(a: dict, b: dict, sign=1) -> dict:
    out = dict(a)
    for k, v in b.items():
        w = out.get(k, 0) + (v if sign == 1 else -v)
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def _pmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (i1, j1), v1 in a.items():
        for (i2, j2), v2 in b.items():
            k = (i1 + i2, j1 + j2)
            w = out.get(k, 0) + v1 * v2
            if w:
                out[k] = w
            else:
                out.pop(k, None)
    return out


def _pscale(a: dict, c) -> dict:
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def _is_const(a: dict) -> bool:
    return not a or (len(a) == 1 and ONE_KEY in a)


def _lead(a: dict):
    return a[max(a)]


def _to_domain(c):
    if isinstance(c, GaussRational):
        return QQ_I(QQ(int(c.real.numerator), int(c.real.denominator)),
                    QQ(int(c.imag.numerator), int(c.imag.denominator)))
    c = Q(c)
    return QQ_I(QQ(int(c.numerator), int(c.denominator)), QQ(0))


def _from_domain(e):
    re = Q(int(e.x.numerator), int(e.x.denominator))
    im = Q(int(e.y.numerator), int(e.y.denominator))
    return gauss(re, im)


def _to_sympy_poly(a: dict) -> Poly:
    return Poly.from_dict({k: _to_domain(v) for k, v in a.items()}, *_T, domain=QQ_I)


def _from_sympy_poly(p: Poly) -> dict:
    return {tuple(k): _from_domain(v) for k, v in p.rep.to_dict().items() if v}


def _monomial_gcd(mono: dict, other: dict) -> tuple:
    (key,) = mono
    return tuple(min([key[j]] + [k[j] for k in other]) for j in range(len(key)))


def _shift_down(a: dict, e: tuple) -> dict:
    return {tuple(x - y for x, y in zip(k, e)): v for k, v in a.items()}


def _reduce(num: dict, den: dict):
    if len(den) == 1 or len(num) == 1:
        # a monomial on either side: the gcd is a monomial
        e = _monomial_gcd(den, num) if len(den) == 1 else _monomial_gcd(num, den)
        if any(e):
            num, den = _shift_down(num, e), _shift_down(den, e)
    elif not _is_const(den) and not _is_const(num):
        pn, pd = _to_sympy_poly(num), _to_sympy_poly(den)
        g = pn.gcd(pd)
        if g.total_degree() > 0:
            num = _from_sympy_poly(pn.exquo(g))
            den = _from_sympy_poly(pd.exquo(g))
    lead = _lead(den)
    if lead != 1:
        inv = Q(1) / lead
        num = _pscale(num, inv)
        den = _pscale(den, inv)
    return num, den


# --------------------------------------------------------------------------
# rational functions
# --------------------------------------------------------------------------
class RatFunc:
    """Element of Q(i)(t1, t2) that is not a constant; see :func:`poly_ratfunc`."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: dict, den: dict):
        # callers guarantee canonical form; use make() otherwise
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def make(num: dict, den: dict | None = None, reduced: bool = False):
        if den is None:
            den = {ONE_KEY: Q(1)}
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            return Q(0)
        if not reduced:
            num, den = _reduce(num, den)
        elif _lead(den) != 1:
            inv = Q(1) / _lead(den)
            num, den = _pscale(num, inv), _pscale(den, inv)
        if _is_const(num) and _is_const(den):
            return num[ONE_KEY]
        return RatFunc(num, den)

    @property
    def numerator_poly(self) -> dict:
        return self.num

    @property
    def denominator_poly(self) -> dict:
        return self.den

    @staticmethod
    def _parts(x):
        if isinstance(x, RatFunc):
            return x.num, x.den
        if not x:
            return {}, {ONE_KEY: Q(1)}
        return {ONE_KEY: x}, {ONE_KEY: Q(1)}

    def _is_poly(self):
        return _is_const(self.den)

    def __add__(self, other):
        if isinstance(other, RatFunc):
            if self.den == other.den:
                num = _padd(self.num, other.num)
                return RatFunc.make(num, self.den, reduced=self._is_poly())
            num = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
            return RatFunc.make(num, _pmul(self.den, other.den))
        if isinstance(other, _RATIONAL_TYPES + (GaussRational,)):
            if not other:
                return self
            return RatFunc.make(_padd(self.num, _pscale(self.den, other)), self.den, reduced=True)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(_pscale(self.num, -1), self.den)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RatFunc):
            if self._is_poly() and other._is_poly():
                return RatFunc.make(_pmul(self.num, other.num), self.den, reduced=True)
            return RatFunc.make(_pmul(self.num, other.num), _pmul(self.den, other.den))
        if isinstance(other, _RATIONAL_TYPES + (GaussRational,)):
            if not other:
                return Q(0)
            return RatFunc(_pscale(self.num, other), self.den)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self):
        return RatFunc.make(self.den, self.num, reduced=True)

    def __truediv__(self, other):
        if isinstance(other, RatFunc):
            return self * other.inverse()
        if isinstance(other, _RATIONAL_TYPES + (GaussRational,)):
            return self * (Q(1) / other)
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = Q(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        return False

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self.num.items()), frozenset(self.den.items())))
        return self._hash

    def __bool__(self):
        return True

    def evaluate(self, t1, t2):
        def ev(p):
            return sum((c * Q(t1) ** i * Q(t2) ** j for (i, j), c in p.items()), Q(0))
        return ev(self.num) / ev(self.den)

    def to_sympy(self):
        return _to_sympy_poly(self.num).as_expr() / _to_sympy_poly(self.den).as_expr()

    def __repr__(self):
        return f"RatFunc({scalar_to_str(self)!r})"

    def __str__(self):
        return scalar_to_str(self)


T1 = RatFunc({(1, 0): Q(1)}, {ONE_KEY: Q(1)})
T2 = RatFunc({(0, 1): Q(1)}, {ONE_KEY: Q(1)})


def is_ratfunc(x) -> bool:
    return isinstance(x, RatFunc)


def poly_ratfunc(coeffs: dict):
    """Scalar for the polynomial ``sum c * t1^i * t2^j`` given as ``{(i, j): c}``."""
    num = {k: gauss(getattr(v, "real", v), getattr(v, "imag", 0)) if isinstance(v, GaussRational) else Q(v)
           for k, v in coeffs.items() if v}
    return RatFunc.make(num, reduced=True)


# --------------------------------------------------------------------------
# text form
# --------------------------------------------------------------------------
def _content(p: dict):
    """Positive rational c with p/c having coprime Gaussian-integer coefficients."""
    nums, dens = [], []
    for v in p.values():
        for part in ((v.real, v.imag) if isinstance(v, GaussRational) else (Q(v),)):
            if part:
                nums.append(int(part.numerator))
                dens.append(int(part.denominator))
    return Q(reduce(gcd, nums), reduce(lcm, dens))


def _mono_str(i, j):
    parts = []
    if i:
        parts.append("t1" if i == 1 else f"t1^{i}")
    if j:
        parts.append("t2" if j == 1 else f"t2^{j}")
    return "*".join(parts)


def _poly_str(p: dict) -> str:
    keys = sorted(p, key=lambda k: (-(k[0] + k[1]), -k[0]))
    out = []
    for k in keys:
        c, m = p[k], _mono_str(*k)
        cs = scalar_str(c)
        if m:
            if cs == "1":
                term = m
            elif cs == "-1":
                term = "-" + m
            else:
                term = f"{cs}*{m}"
        else:
            term = cs
        if out and not term.startswith("-"):
            term = "+" + term
        out.append(term)
    return "".join(out)


def _wrap(s: str, p: dict) -> str:
    if len(p) > 1:
        return f"({s})"
    return s


def scalar_to_str(x) -> str:
    """Canonical string for any scalar (round-trips through :func:`parse_scalar`)."""
    if not isinstance(x, RatFunc):
        return scalar_str(x)
    cn, cd = _content(x.num), _content(x.den)
    num = _pscale(x.num, Q(1) / cn)
    den = _pscale(x.den, Q(1) / cd)
    c = cn / cd
    num = _pscale(num, Q(c.numerator))
    den = _pscale(den, Q(c.denominator))
    ns = _poly_str(num)
    if len(num) > 1:
        ns = f"({ns})"
    if _is_const(den) and den[ONE_KEY] == 1:
        return ns
    ds = _poly_str(den)
    if len(den) > 1 or "*" in ds:
        ds = f"({ds})"
    return f"{ns}/{ds}"


def parse_scalar(text: str):
    """Parse the canonical text form (or any sympy-readable expression in t1, t2, i)."""
    expr = sympy.sympify(text.replace("^", "**"), locals={"t1": _T[0], "t2": _T[1], "i": sympy.I})
    expr = sympy.together(expr)
    n, d = sympy.fraction(expr)
    pn = Poly(n, *_T, domain=QQ_I)
    pd = Poly(d, *_T, domain=QQ_I)
    return RatFunc.make(_from_sympy_poly(pn), _from_sympy_poly(pd))
