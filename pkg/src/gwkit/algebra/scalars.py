"""Gaussian rationals and the scalar conventions shared by the package.

A scalar is one of three things, always in the smallest representation that
fits the value:

* a real rational (``mpq`` from gmpy2, or ``Fraction`` when gmpy2 is missing),
* a :class:`GaussRational` with nonzero imaginary part,
* a :class:`~gwkit.algebra.ratfunc.RatFunc` that genuinely depends on t1, t2.

Arithmetic between the kinds goes through the usual operator protocol, so code
elsewhere can treat all of them as elements of one field.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

try:  # gmpy2 is an order of magnitude faster than Fraction for small rationals
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - exercised only without gmpy2
    Q = Fraction

__all__ = ["Q", "GaussRational", "gauss", "I", "as_scalar", "is_scalar_zero", "scalar_str"]

_RATIONAL_TYPES = (int, Fraction, type(Q(0)))


def _q(x):
    if isinstance(x, type(Q(0))):
        return x
    if isinstance(x, (int, Fraction, Rational)):
        return Q(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


class GaussRational:
    """An element re + im*i of Q(i); only constructed with im != 0 by :func:`gauss`."""

    __slots__ = ("real", "imag")

    def __init__(self, real, imag=0):
        self.real = _q(real)
        self.imag = _q(imag)

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, GaussRational):
            return gauss(self.real + other.real, self.imag + other.imag)
        if isinstance(other, _RATIONAL_TYPES):
            return GaussRational(self.real + other, self.imag)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GaussRational(-self.real, -self.imag)

    def __sub__(self, other):
        if isinstance(other, GaussRational):
            return gauss(self.real - other.real, self.imag - other.imag)
        if isinstance(other, _RATIONAL_TYPES):
            return GaussRational(self.real - other, self.imag)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, _RATIONAL_TYPES):
            return GaussRational(other - self.real, -self.imag)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussRational):
            a, b, c, d = self.real, self.imag, other.real, other.imag
            return gauss(a * c - b * d, a * d + b * c)
        if isinstance(other, _RATIONAL_TYPES):
            if other == 0:
                return Q(0)
            return GaussRational(self.real * other, self.imag * other)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self):
        n = self.real * self.real + self.imag * self.imag
        return GaussRational(self.real / n, -self.imag / n)

    def __truediv__(self, other):
        if isinstance(other, GaussRational):
            return self * other.inverse()
        if isinstance(other, _RATIONAL_TYPES):
            return GaussRational(self.real / other, self.imag / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, _RATIONAL_TYPES):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = Q(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self):
        return GaussRational(self.real, -self.imag)

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, GaussRational):
            return self.real == other.real and self.imag == other.imag
        if isinstance(other, _RATIONAL_TYPES):
            return self.imag == 0 and self.real == other
        return NotImplemented

    def __hash__(self):
        if self.imag == 0:
            return hash(self.real)
        return hash((self.real, self.imag))

    def __bool__(self):
        return bool(self.real) or bool(self.imag)

    def __repr__(self):
        return f"GaussRational({self.real}, {self.imag})"

    def __str__(self):
        return scalar_str(self)


def gauss(real, imag=0):
    """Return ``real + imag*i`` in its smallest representation."""
    if imag == 0:
        return _q(real)
    return GaussRational(real, imag)


I = GaussRational(0, 1)


def as_scalar(x):
    """Coerce ints, Fractions and complex-like input into a package scalar."""
    if isinstance(x, _RATIONAL_TYPES):
        return _q(x)
    if isinstance(x, GaussRational):
        return gauss(x.real, x.imag)
    if hasattr(x, "numerator_poly"):
        return x
    raise TypeError(f"unsupported scalar {x!r}")


def is_scalar_zero(x) -> bool:
    return not x


def _rational_str(x) -> str:
    x = _q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def scalar_str(x) -> str:
    """Canonical text form: ``-1/12``, ``1/2*i``, ``(1/2+3*i)``, or a t1,t2 expression."""
    if isinstance(x, GaussRational):
        if x.imag == 0:
            return _rational_str(x.real)
        im = _rational_str(x.imag)
        im_part = "i" if x.imag == 1 else ("-i" if x.imag == -1 else f"{im}*i")
        if x.real == 0:
            return im_part
        sign = "" if im_part.startswith("-") else "+"
        return f"({_rational_str(x.real)}{sign}{im_part})"
    if isinstance(x, _RATIONAL_TYPES):
        return _rational_str(x)
    return str(x)
