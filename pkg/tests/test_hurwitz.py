import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gwkit import _kernels
from gwkit.algebra import Q, s_function
from gwkit.hurwitz import (HurwitzGuardError, HurwitzQuery, IdentityViolation, class_sizes,
                           cut_join_matrix, hurwitz_class_algebra, hurwitz_enumerate, hurwitz_literal,
                           one_part_series, signed_hurwitz_series, stationary_p1_closed,
                           stationary_p1_hurwitz, stationary_p1_series)
from gwkit.partitions import aut, partitions


def small_queries(max_m=3, max_r=6):
    for m in range(1, max_m + 1):
        for rho in partitions(m):
            for lam in partitions(m):
                for g in range(0, 5):
                    r = 2 * g - 2 + len(rho) + len(lam)
                    if 0 <= r <= max_r:
                        yield HurwitzQuery(m, rho, lam, g)


def test_enumerate_examples():
    assert hurwitz_enumerate(HurwitzQuery(2, (2,), (2,), 0)) == Q(1, 2)
    assert hurwitz_enumerate(HurwitzQuery(1, (1,), (1,), 0)) == 1
    assert hurwitz_enumerate(HurwitzQuery(3, (3,), (3,), 0)) == Q(1, 3)


def test_class_algebra_examples():
    assert hurwitz_class_algebra(HurwitzQuery(2, (2,), (2,), 1)) == Q(1, 2)
    assert hurwitz_class_algebra(HurwitzQuery(2, (2,), (2,), 2)) == Q(1, 2)


@pytest.mark.parametrize("q", list(small_queries()), ids=str)
def test_dual_oracle(q):
    assert hurwitz_enumerate(q) == hurwitz_class_algebra(q)


@pytest.mark.parametrize("q", [q for q in small_queries(3, 4)], ids=str)
def test_literal_oracle(q):
    assert hurwitz_literal(q) == hurwitz_enumerate(q)


@pytest.mark.parametrize("q", [HurwitzQuery(4, (2, 2), (3, 1), 1), HurwitzQuery(5, (5,), (2, 2, 1), 1),
                               HurwitzQuery(4, (4,), (4,), 2)], ids=str)
def test_dual_oracle_beyond_m3(q):
    assert hurwitz_enumerate(q) == hurwitz_class_algebra(q)


def test_guard():
    with pytest.raises(HurwitzGuardError):
        hurwitz_enumerate(HurwitzQuery(5, (5,), (5,), 4))
    with pytest.raises(ValueError):
        hurwitz_class_algebra(HurwitzQuery(9, (9,), (9,), 0))


def test_disconnected_covers_counted():
    assert hurwitz_class_algebra(HurwitzQuery(1, (1,), (1,), 0)) == 1
    # two sheets and one simple branch point
    assert hurwitz_enumerate(HurwitzQuery(2, (1, 1), (2,), 0)) == Q(1, 2)


@given(st.integers(1, 6), st.data())
def test_values_nonnegative_with_bounded_denominator(m, data):
    rho = data.draw(st.sampled_from(list(partitions(m))))
    lam = data.draw(st.sampled_from(list(partitions(m))))
    g = data.draw(st.integers(0, 3))
    v = hurwitz_class_algebra(HurwitzQuery(m, rho, lam, g))
    assert v >= 0
    fact = 1
    for k in range(2, m + 1):
        fact *= k
    assert (v * fact).denominator == 1


@pytest.mark.parametrize("m", range(1, 8))
def test_cut_join_matrix_column_sums(m):
    classes, M = cut_join_matrix(m)
    sizes = class_sizes(m)
    # T * C_mu has |C_mu| * C(m,2) permutations in total
    for j, mu in enumerate(classes):
        total = sum(M[i][j] * sizes[lam] for i, lam in enumerate(classes))
        assert total == sizes[mu] * m * (m - 1) // 2


def test_one_part_examples():
    assert one_part_series((2,), 6).u_coefficients() == [1, 0, Q(-1, 8), 0, Q(1, 384), 0]
    assert one_part_series((1,), 6) == s_function(1, "sin", 6) / s_function(1, "sin", 6)
    assert one_part_series((1, 1), 6) == s_function(1, "sin", 6)


@pytest.mark.parametrize("m", range(1, 6))
def test_one_part_identity(m):
    for rho in partitions(m):
        assert signed_hurwitz_series(rho, (m,), 8) == one_part_series(rho, 8)


@pytest.mark.parametrize("m", range(1, 4))
def test_one_part_identity_with_enumeration_oracle(m):
    for rho in partitions(m):
        got = signed_hurwitz_series(rho, (m,), 6, oracle=hurwitz_enumerate)
        assert got == one_part_series(rho, 6)


def test_stationary_examples():
    s = stationary_p1_series((1,), (1,), 6)
    assert s == s_function(1, "sin", 6)
    assert s.coefficient(2) == Q(-1, 24)
    s = stationary_p1_series((2,), (1, 1), 8)
    assert s == (s_function(2, "sin", 8) * s_function(1, "sin", 8)).scale(Q(1, 2))
    for m in range(1, 5):
        assert stationary_p1_series((m,), (m,), 4).coefficient(0) == 1


@pytest.mark.parametrize("m", range(1, 6))
def test_stationary_two_constructions(m):
    for mu in partitions(m):
        for nu in partitions(m):
            assert stationary_p1_closed(mu, nu, 11) == stationary_p1_hurwitz(mu, nu, 11)


def test_stationary_size_mismatch():
    with pytest.raises(ValueError):
        stationary_p1_series((2,), (1,), 4)


def test_identity_violation_carries_witness():
    err = IdentityViolation("boom", witness={"k": 1})
    assert err.witness == {"k": 1}


@pytest.mark.parametrize("m", range(1, 6))
def test_kernels_numba_and_numpy_agree(m):
    perms = _kernels.all_permutations(m)
    trans = _kernels.transpositions(m)
    t_np = _kernels._table_np(perms, trans)
    assert np.array_equal(_kernels.action_table(perms, trans), t_np)
    counts = np.zeros(len(perms), dtype=np.int64)
    counts[0] = 1
    assert np.array_equal(_kernels.walk(t_np, counts, 4), _kernels._walk_np(t_np, counts, 4))
    assert np.array_equal(_kernels.cycle_types(perms), _kernels._cycles_np(perms))
    assert np.array_equal(_kernels.rank_permutations(perms), np.arange(len(perms)))


def test_numpy_backend_via_env_flag():
    code = ("from gwkit import _kernels; from gwkit.hurwitz import *;"
            "print(_kernels.BACKEND, hurwitz_enumerate(HurwitzQuery(4, (2,2), (3,1), 1)))")
    env = dict(os.environ, GW_KIT_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    backend, value = out.stdout.split()
    assert backend == "numpy"
    assert Q(value) == hurwitz_class_algebra(HurwitzQuery(4, (2, 2), (3, 1), 1))
