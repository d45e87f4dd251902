import pytest
from sympy.functions.combinatorial.numbers import partition
from hypothesis import given, strategies as st

from gwkit.algebra import Q, T1, T2
from gwkit.fock import (FockVector, adjoint_check, apply_operator, aut_and_gluing, commutator_check,
                        common_subpartitions, dual_basis, fock_pairing, nakajima_degree)
from gwkit.geometry import CohClass, build_surface
from gwkit.partitions import (PartitionSyntaxError, WeightedPartition, parse_partition,
                              parse_weighted_partition, partition_count, partitions, weighted_partitions)

A1 = build_surface("A1")
W = parse_weighted_partition


@pytest.mark.parametrize("m", range(0, 21))
def test_partition_count_matches_sympy(m):
    assert partition_count(m) == len(list(partitions(m))) == int(partition(m))


def test_aut_and_gluing_examples():
    assert aut_and_gluing((2, 1)) == (1, 2)
    assert aut_and_gluing((2, 2, 1)) == (2, 8)
    assert aut_and_gluing(W("1:w1,1:1")) == (1, 1)


def test_parse_weighted_partition():
    wp = W("2:w1,1:1")
    assert wp.pairs == ((2, 1), (1, 0))
    assert str(wp) == "2:w1,1:1"
    assert W("1,1").pairs == ((1, 0), (1, 0))
    assert parse_partition("3,1") == (3, 1)


@pytest.mark.parametrize("text,pos", [("2:w1,", 4), ("2:x", 1), ("a", 0), ("1:w3", 2), ("0", None)])
def test_parse_errors_carry_position(text, pos):
    if pos is None:
        assert W(text).size == 0
        return
    with pytest.raises(PartitionSyntaxError) as err:
        W(text, rank=2)
    assert err.value.position == pos


def test_pairing_examples():
    assert fock_pairing(W("1:w1"), W("1:w1"), A1) == Q(-1, 2)
    assert fock_pairing(FockVector.vacuum(), FockVector.vacuum(), A1) == 1
    assert fock_pairing(W("2:w1"), W("1:w1,1:w1"), A1) == 0
    assert fock_pairing(W("1:1"), W("1:1"), A1) == 1 / (2 * T1 * T2)


def normal_ordered_pairing(mu, nu, surface):
    """Oracle: <b_mu, y> = (-1)^l(mu)/z(mu) <v| p_{mu_1}(g_1)...p_{mu_l}(g_l) y> via annihilators."""
    v = FockVector.basis(nu)
    for k, lab in mu.pairs:
        v = apply_operator(k, lab, v, surface)
    return v.terms.get(WeightedPartition(), Q(0)) * (-1) ** mu.length / mu.z_factor()


@pytest.mark.parametrize("name,m", [("A1", 3), ("A2", 2), ("A1", 4)])
def test_pairing_matches_normal_ordering_oracle(name, m):
    s = build_surface(name)
    basis = weighted_partitions(m, s.rank + 1)
    for a in basis:
        for b in basis:
            assert fock_pairing(a, b, s) == normal_ordered_pairing(a, b, s)


@given(st.sampled_from(weighted_partitions(3, 2)), st.sampled_from(weighted_partitions(3, 2)))
def test_pairing_symmetric(a, b):
    assert fock_pairing(a, b, A1) == fock_pairing(b, a, A1)


@given(st.integers(1, 3), st.integers(1, 3), st.data())
def test_pairing_grading_orthogonal(m1, m2, data):
    a = data.draw(st.sampled_from(weighted_partitions(m1, 2)))
    b = data.draw(st.sampled_from(weighted_partitions(m2, 2)))
    if m1 != m2:
        assert fock_pairing(a, b, A1) == 0


def test_nakajima_degree():
    assert nakajima_degree(W("2,1,1")) == 2
    assert nakajima_degree(W("1:w1,1,1")) == 2
    assert nakajima_degree(W("1,1,1")) == 0
    with pytest.raises(ValueError):
        nakajima_degree([(1, CohClass.one(1) + CohClass.omega(1, 1))])


def test_common_subpartitions():
    assert len(common_subpartitions(W("1:w1"), W("1:w1"))) == 2
    assert [r.size for r, _, _ in common_subpartitions(W("1:1"), W("1:w1"))] == [0]
    assert len(common_subpartitions(W("2:w1,1:w1"), W("2:w1,1:w1"))) == 4


def test_dual_basis_a1_m1():
    duals = dual_basis(A1, 1)
    om = FockVector.from_creation([(1, CohClass.omega(1, 1).scale(-2))])
    one = FockVector.from_creation([(1, CohClass.one(1).scale(2 * T1 * T2))])
    assert duals[W("1:w1")] == om
    assert duals[W("1:1")] == one
    assert dual_basis(A1, 0)[WeightedPartition()] == FockVector.vacuum()


@pytest.mark.parametrize("name,m", [("A1", 1), ("A1", 2), ("A1", 3), ("A1", 4), ("A2", 2), ("A3", 2), ("A2", 3)])
def test_dual_basis_is_dual(name, m):
    s = build_surface(name)
    duals = dual_basis(s, m)
    for a in duals:
        for b, dv in duals.items():
            assert fock_pairing(FockVector.basis(a), dv, s) == (1 if a == b else 0)


def test_commutator_identity_size_four():
    assert commutator_check(A1, 4) == []


def test_commutator_identity_a2():
    assert commutator_check(build_surface("A2"), 3) == []


def test_adjoint_identity():
    assert adjoint_check(A1, 3) == []
