import sympy
import pytest
from hypothesis import given, strategies as st

from gwkit.algebra import Q
from gwkit.invariants import InvariantSpec, reduced_invariant
from gwkit.virasoro import (PRINTED, ConventionChoice, bracket, convention_family, forward_solve,
                            forward_solver_check, resolve_convention, virasoro_grid, virasoro_residual)

RESOLVED = ConventionChoice((1, 1, 1, 1, 1), "g-1", 1, True, True)


def sympy_bracket(alpha, p, q):
    x = sympy.Symbol("x")
    poly = sympy.Poly(sympy.prod([x + sympy.Rational(alpha) + j for j in range(p + 1)]), x)
    return Q(str(poly.coeff_monomial(x ** q)))


def test_bracket_examples():
    assert bracket(Q(1, 2), 0, 0) == Q(1, 2)
    assert bracket(Q(1, 2), 1, 1) == 2
    assert bracket(Q(-1, 2), 2, 0) == Q(-3, 8)
    with pytest.raises(ValueError):
        bracket(Q(1, 2), 1, 3)


@given(st.fractions(max_denominator=6).map(str), st.integers(0, 6), st.data())
def test_bracket_matches_sympy(alpha, p, data):
    q = data.draw(st.integers(0, p + 1))
    assert bracket(Q(alpha), p, q) == sympy_bracket(alpha, p, q)


@given(st.fractions(max_denominator=6).map(lambda f: Q(f.numerator, f.denominator)),
       st.integers(1, 8), st.data())
def test_bracket_pascal_recurrence(alpha, p, data):
    q = data.draw(st.integers(1, p))
    assert bracket(alpha, p, q) == bracket(alpha, p - 1, q) * (alpha + p) + bracket(alpha, p - 1, q - 1)


def test_printed_discrepancy_a0_g1():
    spec = InvariantSpec.a1(1, identity=(1,), stationary=(1,))
    # LHS [1/2]^0_0 <tau_1(1) tau_1(omega)>_1 = -1/24, printed RHS +1/24
    assert virasoro_residual(spec, PRINTED) == Q(-1, 12)
    assert virasoro_residual(spec, RESOLVED) == 0


def test_dimension_violation_is_trivially_zero():
    spec = InvariantSpec.a1(1, identity=(3,), stationary=(1,))
    for conv in convention_family()[:20]:
        assert virasoro_residual(spec, conv) == 0


def test_residual_requires_a1_degree1():
    with pytest.raises(ValueError):
        virasoro_residual(InvariantSpec.a1(1, identity=(1,), stationary=(1,), degree=2))


def test_resolution_finds_residual_free_convention():
    best, rep = resolve_convention(3, 2, 2)
    assert rep.resolved
    assert best == RESOLVED
    assert rep.grid_size == 146
    assert rep.printed_nonzero == 144
    (g, a, A, B), _ = rep.minimal_counterexample
    assert (g, a) == (0, 0)


def test_unextended_family_has_no_zero_convention():
    _, rep = resolve_convention(3, 2, 2, extended=False)
    assert not rep.resolved
    assert rep.best_residuals


def test_stationary_only_targets_independent_of_line_two_and_three():
    # with r = 0 on the right, lines 2 and 3 vanish, so their signs do not matter
    base = ConventionChoice((1, 1, 1, 1, 1), "g-1", 1, True, True)
    for g, a, A, B in virasoro_grid(3, 0, 2):
        spec = InvariantSpec.a1(g, identity=(a + 1,), stationary=B)
        for s2 in (1, -1):
            for s3 in (1, -1):
                conv = ConventionChoice((1, s2, s3, 1, 1), "g-1", 1, True, True)
                assert virasoro_residual(spec, conv) == virasoro_residual(spec, base)


@given(st.sampled_from(virasoro_grid(3, 2, 2)), st.sampled_from(convention_family()))
def test_residuals_are_rational(pt, conv):
    g, a, A, B = pt
    res = virasoro_residual(InvariantSpec.a1(g, identity=(a + 1,) + A, stationary=B), conv)
    assert isinstance(res, type(Q(0)))


def test_forward_solver_reproduces_closed_formula():
    assert forward_solver_check(RESOLVED, 3, 2, 2) == []
    assert forward_solver_check(RESOLVED, 4, 3, 2) == []


def test_forward_solver_detects_flip():
    flipped = ConventionChoice((-1, 1, 1, 1, 1), "g-1", 1, True, True)
    assert forward_solver_check(flipped, 2, 1, 1)


def test_forward_solve_values():
    ev = forward_solve(RESOLVED)
    assert ev(0, [1], []) == -2
    assert ev(1, [1], [1]) == Q(-1, 12) * 1
    for g, A, B in [(2, [1, 2], [1]), (3, [2, 2], [1, 1]), (2, [3], [])]:
        want = reduced_invariant(InvariantSpec.a1(g, identity=tuple(A), stationary=tuple(B))).value
        assert ev(g, A, B) == want
