import pytest
import sympy
from hypothesis import given, strategies as st

from gwkit.algebra import (I, Q, T1, T2, FitUnderdetermined, RatFunc, TruncatedSeries, WindowError,
                           exp_series, fit_rational_in_q, g_series, gauss, parse_scalar, q_series,
                           s_function, scalar_to_str, series_arith, series_from_u)


def u_series(d, order, offset=None):
    return series_from_u({k: Q(v) for k, v in d.items()}, order, offset)


def sympy_coeffs(expr, order):
    x = sympy.Symbol("u")
    ser = sympy.series(expr(x), x, 0, order).removeO()
    return [Q(str(ser.coeff(x, k))) for k in range(order)]


# -- scalars -------------------------------------------------------------------

def test_gauss_canonical_and_i_squared():
    assert I * I == -1
    assert gauss(Q(2, 4), Q(-3, 6)) == gauss(Q(1, 2), Q(-1, 2))
    assert (gauss(1, 1) / gauss(1, -1)) == I


def test_ratfunc_canonical_form():
    a = (T1 * T1 - T2 * T2) / (T1 - T2)
    assert a == T1 + T2
    assert str(a) == "(t1+t2)"
    assert (T1 / T2) * (T2 / T1) == 1


@pytest.mark.parametrize("text", ["-1/12", "(t1+t2)/2", "(-i*t1-i*t2)/(2*t1*t2)", "3/7*i"])
def test_scalar_string_round_trip(text):
    x = parse_scalar(text)
    assert parse_scalar(scalar_to_str(x)) == x


# -- S-function and arithmetic ---------------------------------------------------

def test_s_function_examples():
    assert s_function(1, "sin", 6).u_coefficients() == [1, 0, Q(-1, 24), 0, Q(1, 1920), 0]
    assert s_function(2, "sin", 6).u_coefficients() == [1, 0, Q(-1, 6), 0, Q(1, 120), 0]
    assert s_function(1, "sinh", 4).u_coefficients() == [1, 0, Q(1, 24), 0]


def test_s_function_against_sympy():
    want = sympy_coeffs(lambda x: sympy.sin(3 * x / 2) / (3 * x / 2), 12)
    assert s_function(3, "sin", 12).u_coefficients() == want


def test_inverse_examples():
    s = s_function(1, "sin", 5)
    assert (1 / s).u_coefficients() == [1, 0, Q(1, 24), 0, Q(7, 5760)]
    assert (1 / (s * s)).u_coefficients() == [1, 0, Q(1, 12), 0, Q(1, 240)]


def test_differentiate_u():
    assert u_series({3: 1}, 6).differentiate_u() == u_series({2: 3}, 5)
    assert series_arith(u_series({3: 1}, 6), None, "differentiate_u").coefficient(2) == 3


def test_division_by_zero_leading_term_raises():
    zero = TruncatedSeries({}, 4)
    with pytest.raises((ZeroDivisionError, ValueError)):
        u_series({0: 1}, 4) / zero


def test_window_underflow_raises():
    with pytest.raises(WindowError):
        TruncatedSeries({}, u_order=-3, u_offset=0)


def test_window_min_propagation():
    a = u_series({0: 1, 1: 1}, 5)
    b = u_series({0: 2}, 3)
    assert (a + b).u_order == 3
    assert (a * b).u_order == 3


def test_s_log_derivative():
    s = TruncatedSeries({(0, (1,)): Q(1), (0, (2,)): Q(1, 2)}, 2, 0, 3, ("s",))
    d = s.s_log_derivative(0)
    assert d.coefficient(0, (1,)) == 1 and d.coefficient(0, (2,)) == 1


@pytest.mark.parametrize("order", [4, 10, 20])
def test_s_times_inverse_is_one(order):
    s = s_function(1, "sin", order)
    assert s * (1 / s) == TruncatedSeries.constant(1, order)


def test_sinh_is_twisted_sin():
    sin, sinh = s_function(1, "sin", 16), s_function(1, "sinh", 16)
    for k in range(0, 16, 2):
        assert sinh.coefficient(k) == (-1) ** (k // 2) * sin.coefficient(k)


small = st.dictionaries(st.integers(0, 4), st.fractions(max_denominator=7).map(lambda f: Q(f.numerator, f.denominator)),
                        max_size=4)


@given(small, small, small)
def test_ring_axioms(a, b, c):
    x, y, z = (u_series(d, 6) for d in (a, b, c))
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x


@given(small)
def test_inverse_property(a):
    a = dict(a)
    a[0] = Q(1) + abs(a.get(0, Q(0)))
    x = u_series(a, 7)
    assert x * x.inverse() == TruncatedSeries.constant(1, 7)


# -- g_series ------------------------------------------------------------------

def test_g_series_is_power_series_and_constant_term():
    for sign in "+-":
        g = g_series(3, 5, sign)
        assert g.u_offset >= 0
        assert all(sum(m) <= 3 for m in g.monomials())
    # m = 1 term at z^0 u^0: w/(z(z+1)) -> (iu/(1-e^{-iu}))/(iu) * ... leading 1
    assert g_series(0, 3, "+").coefficient(0, (0,)) == 1


# -- q-fit ---------------------------------------------------------------------

def test_fit_tan_half_angle():
    tan = sympy_coeffs(lambda x: sympy.tan(x / 2), 12)
    s = series_from_u({k: -I * c for k, c in enumerate(tan) if c}, 12)
    fit = fit_rational_in_q(s, 1)
    assert not fit.residual_flag
    assert fit.expand(12) == s
    # -i tan(u/2) = (1 - e^{iu})/(1 + e^{iu}) = (1 + q)/(1 - q)
    ratio = [c / fit.denominator[0] for c in fit.numerator], [c / fit.denominator[0] for c in fit.denominator]
    assert ratio == ([1, 1], [1, -1])


def test_fit_constant():
    fit = fit_rational_in_q(TruncatedSeries.constant(1, 8), 0)
    assert not fit.residual_flag and fit.degree == 0


def test_fit_non_rational_flags_residual():
    fit = fit_rational_in_q(exp_series(1, 12), 2)
    assert fit.residual_flag


def test_fit_underdetermined_names_order():
    with pytest.raises(FitUnderdetermined, match="order"):
        fit_rational_in_q(exp_series(1, 3), 4, min_spare=2)


def test_fit_reexpansion_of_inverse_s_squared():
    s = s_function(1, "sin", 24)
    target = (1 / (s * s)).shift_u(-2)
    fit = fit_rational_in_q(target, 2)
    assert not fit.residual_flag
    assert fit.expand(target.u_order) == target


def test_q_series_leading():
    q = q_series(4)
    assert q.coefficient(0) == -1 and q.coefficient(1) == -I
