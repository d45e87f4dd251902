from fractions import Fraction
from math import factorial

import pytest
import sympy
from hypothesis import given, strategies as st

from gwkit.algebra import Q
from gwkit.geometry import alpha, build_surface, intersection, CohClass
from gwkit.invariants import (InvariantSpec, consistency_suite, de_invariant, reduced_invariant,
                              stationary_grid)

A1 = build_surface("A1")


def oracle(g, d, A, B, pairings):
    """Independent transcription with Fraction and sympy's rising factorial."""
    r, s = len(A), len(B)
    if sum(A) + sum(B) != g + r:
        return Fraction(0)
    val = Fraction(int(sympy.rf(2 * g + s - 2, r))) * Fraction(d) ** (2 * g + s - 3)
    for a in A:
        val *= Fraction(factorial(a - 1), factorial(2 * a - 1)) * Fraction(-1, 2) ** (a - 1)
    for b, p in zip(B, pairings):
        val *= Fraction(factorial(b), factorial(2 * b + 1)) * Fraction(-1, 2) ** b * p
    return val


def value(spec):
    return reduced_invariant(spec).value


@pytest.mark.parametrize("d", range(1, 7))
def test_genus_zero_no_insertions(d):
    assert value(InvariantSpec.a1(0, degree=d)) == Q(1, d ** 3)


def test_examples():
    assert value(InvariantSpec.a1(1, stationary=(1,))) == Q(-1, 12)
    a2 = build_surface("A2")
    v = reduced_invariant(InvariantSpec(a2, 0, (1, 2)))
    assert v.value == 0 and v.vanishing_reason == "not-root-multiple"
    v = reduced_invariant(InvariantSpec.a1(1, identity=(2,)))
    assert v.value == 0 and v.vanishing_reason == "zero-prefactor"
    v = reduced_invariant(InvariantSpec.a1(1, identity=(1,)))
    assert v.value == 0 and v.vanishing_reason == "dimension"


def test_dilaton_example():
    for d in range(1, 5):
        assert value(InvariantSpec.a1(0, identity=(1,), degree=d)) == Q(-2, d ** 3)


def test_scaling_example():
    for d in range(1, 7):
        assert value(InvariantSpec.a1(1, stationary=(1,), degree=d)) == Q(-1, 12)


def test_negative_index_rejected():
    with pytest.raises(ValueError):
        InvariantSpec.a1(1, identity=(-1,))
    with pytest.raises(ValueError):
        InvariantSpec.a1(-1)


@given(st.integers(0, 4), st.integers(1, 6), st.lists(st.integers(1, 5), max_size=3),
       st.lists(st.integers(0, 5), max_size=3))
def test_matches_oracle_a1(g, d, A, B):
    spec = InvariantSpec.a1(g, identity=tuple(A), stationary=tuple(B), degree=d)
    assert value(spec) == oracle(g, d, A, B, [1] * len(B))


@given(st.integers(0, 3), st.lists(st.integers(1, 4), max_size=3), st.lists(st.integers(0, 4), max_size=3),
       st.randoms())
def test_permutation_symmetry(g, A, B, rnd):
    spec = InvariantSpec.a1(g, identity=tuple(A), stationary=tuple(B))
    rnd.shuffle(A)
    rnd.shuffle(B)
    assert value(spec) == value(InvariantSpec.a1(g, identity=tuple(A), stationary=tuple(B)))


@pytest.mark.parametrize("spec", stationary_grid(3, 2, 3)[:40], ids=str)
def test_d_dependence_is_monomial(spec):
    v1 = value(spec)
    for d in range(1, 7):
        got = value(spec.replace(beta=(d,)))
        assert got == Q(d) ** (2 * spec.genus + spec.s - 3) * v1


def test_root_independence_a3():
    a3 = build_surface("A3")
    divisors = ((1, 1), (0, 2))
    base = None
    for root in a3.positive_roots:
        spec = InvariantSpec.for_root(a3, 1, 2, root, (1,), divisors)
        pair = 1
        for _, l in divisors:
            pair *= root[l - 1]
        if pair:
            ratio = value(spec) / pair
            base = ratio if base is None else base
            assert ratio == base
        else:
            assert value(spec) == 0
    assert base is not None


def test_de_highest_root_triple_product():
    d4 = build_surface("D4")
    highest = max(d4.positive_roots, key=sum)
    outer = [i + 1 for i in range(4) if sum(1 for x in d4.cartan[i] if x == -1) == 1]
    spec = InvariantSpec(d4, 0, highest, (), tuple((0, l) for l in outer))
    want = 1
    for l in outer:
        want *= intersection(highest, CohClass.omega(4, l), d4)
    assert de_invariant(spec).value == want


def test_de_zero_pairing():
    e6 = build_surface("E6")
    root = next(r for r in e6.positive_roots if r[0] == 0)
    assert de_invariant(InvariantSpec(e6, 1, root, (), ((1, 1),))).value == 0


@pytest.mark.parametrize("name", ["D4", "D5", "E6", "E7", "E8"])
def test_de_matches_a1(name):
    s = build_surface(name)
    for root in s.positive_roots[:10]:
        for l in range(1, s.rank + 1):
            if root[l - 1] == 1:
                spec = InvariantSpec(s, 1, root, (), ((1, l),))
                assert de_invariant(spec).value == Q(-1, 12)
                spec = InvariantSpec(s, 2, tuple(2 * x for x in root), (2,), ((1, l),))
                assert de_invariant(spec).value == value(InvariantSpec.a1(2, (2,), (1,), degree=2))


def test_de_invariant_rejects_a_type():
    with pytest.raises(ValueError):
        de_invariant(InvariantSpec.a1(0))


def test_consistency_grid():
    rep = consistency_suite(stationary_grid(3, 2, 3))
    assert rep.all_ok, rep.failures()[:3]
    kinds = rep.counts()
    assert {"scaling", "dilaton", "divisor", "string", "stationary"} <= set(kinds)


def test_string_equation_removes_tau0_identity():
    # <tau_0(1) tau_1(omega)>_{1,1} = <tau_0(omega)>_{1,1}
    lhs = value(InvariantSpec.a1(1, identity=(0,), stationary=(1,)))
    assert lhs == value(InvariantSpec.a1(1, stationary=(0,)))
