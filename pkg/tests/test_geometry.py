from itertools import product

import pytest
from hypothesis import given, strategies as st

from gwkit.algebra import Q, T1, T2
from gwkit.geometry import (CohClass, alpha, build_surface, equivariant_pairing, intersection,
                            is_root_multiple, parse_surface, s_monomial)

ROOT_COUNTS = {"A1": 1, "A2": 3, "A5": 15, "D4": 12, "D5": 20, "D6": 30, "E6": 36, "E7": 63, "E8": 120}


def norm_two_vectors(surface, box):
    """Independent root oracle: positive lattice vectors v with v^T C v = 2."""
    c, n = surface.cartan, surface.rank
    out = set()
    for v in product(range(box + 1), repeat=n):
        if any(v) and sum(v[i] * c[i][j] * v[j] for i in range(n) for j in range(n)) == 2:
            out.add(v)
    return out


@pytest.mark.parametrize("name,count", ROOT_COUNTS.items())
def test_root_counts(name, count):
    assert len(build_surface(name).positive_roots) == count


@pytest.mark.parametrize("name,box", [("A4", 1), ("D4", 2), ("D5", 2), ("E6", 3)])
def test_roots_match_norm_two_oracle(name, box):
    s = build_surface(name)
    assert set(s.positive_roots) == norm_two_vectors(s, box)


@pytest.mark.parametrize("name", ["A3", "D5", "E6", "E7", "E8"])
def test_roots_have_self_intersection_minus_two(name):
    s = build_surface(name)
    assert all(intersection(r, r, s) == -2 for r in s.positive_roots)


@pytest.mark.parametrize("name", ["A3", "D4", "E6", "E8"])
def test_cartan_shape(name):
    c = build_surface(name).cartan
    n = len(c)
    assert all(c[i][i] == 2 for i in range(n))
    assert all(c[i][j] == c[j][i] and c[i][j] in (0, -1) for i in range(n) for j in range(n) if i != j)


def test_a2_roots_and_alpha():
    s = build_surface("A", 2)
    assert set(s.positive_roots) == {(1, 0), (0, 1), (1, 1)}
    assert alpha(s, 1, 3) == (1, 1)
    with pytest.raises(ValueError):
        alpha(s, 2, 2)


def test_intersection_examples():
    a1, a2 = build_surface("A1"), build_surface("A2")
    assert intersection((1,), (1,), a1) == -2
    assert intersection(alpha(a2, 1, 3), CohClass.omega(2, 1), a2) == 1
    assert intersection(alpha(a2, 1, 3), CohClass.omega(2, 2), a2) == 1
    assert is_root_multiple((1, 2), a2) is None
    with pytest.raises(ValueError):
        intersection(CohClass.one(1), (1,), a1)


@pytest.mark.parametrize("n", range(1, 6))
def test_alpha_omega_duality(n):
    s = build_surface("A", n)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 2):
            for k in range(1, n + 1):
                want = 1 if i <= k <= j - 1 else 0
                assert intersection(alpha(s, i, j), CohClass.omega(n, k), s) == want


def test_a1_equivariant_pairings():
    s = build_surface("A1")
    one, om, e = CohClass.one(1), CohClass.omega(1, 1), CohClass.from_curve(s, (1,))
    assert equivariant_pairing(one, one, s) == 1 / (2 * T1 * T2)
    assert equivariant_pairing(one, e, s) == 0
    assert equivariant_pairing(om, om, s) == Q(-1, 2)


@pytest.mark.parametrize("n", range(1, 6))
def test_divisor_gram_is_minus_cartan_inverse(n):
    s = build_surface("A", n)
    cinv = s.cartan_inverse
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            got = equivariant_pairing(CohClass.omega(n, i), CohClass.omega(n, j), s)
            assert got == -cinv[i - 1][j - 1]


@pytest.mark.parametrize("n", range(1, 7))
def test_edge_weights_are_opposite(n):
    s = build_surface("A", n)
    for i in range(1, n + 1):
        assert s.edge_weight(i, i) == -s.edge_weight(i, i + 1)


def test_a_tangent_weights_formula():
    s = build_surface("A", 2)
    assert s.fixed_points[0] == (3 * T1, -2 * T1 + T2)
    assert s.fixed_points[1] == (2 * T1 - T2, -T1 + 2 * T2)
    assert s.fixed_points[2] == (T1 - 2 * T2, 3 * T2)


def test_s_monomial():
    a2 = build_surface("A2")
    assert s_monomial(tuple(3 * x for x in alpha(a2, 1, 3)), a2) == (3, 3)
    assert s_monomial((0, 1, 0)) == (0, 1, 0)
    assert s_monomial((0,)) == (0,)
    with pytest.raises(ValueError):
        s_monomial((1, -1))


def test_parse_surface():
    assert parse_surface("E6") == ("E", 6)
    assert parse_surface("A(3)") == ("A", 3)
    with pytest.raises(ValueError):
        parse_surface("F4")


def brute_root_multiple(beta, surface):
    for r in surface.positive_roots:
        for d in range(1, 21):
            if tuple(d * x for x in r) == tuple(beta):
                return d, r
    return None


@given(st.sampled_from(["A2", "A3", "D4"]), st.data())
def test_is_root_multiple_total_and_exact(name, data):
    s = build_surface(name)
    beta = tuple(data.draw(st.lists(st.integers(-20, 20), min_size=s.rank, max_size=s.rank)))
    assert is_root_multiple(beta, s) == brute_root_multiple(beta, s)


@given(st.integers(1, 20), st.data())
def test_is_root_multiple_detects_multiples(d, data):
    s = build_surface("D5")
    root = data.draw(st.sampled_from(s.positive_roots))
    assert is_root_multiple(tuple(d * x for x in root), s) == (d, root)
