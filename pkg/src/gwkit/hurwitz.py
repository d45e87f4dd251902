"""Double Hurwitz numbers by two independent oracles, and stationary P^1 series.

H^g_{rho,lambda} counts tuples (sigma, tau_1..tau_r) with sigma of cycle type rho,
tau_i transpositions and sigma*tau_1*...*tau_r of type lambda, divided by m!,
where r = 2g - 2 + l(rho) + l(lambda).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from math import comb, factorial

import numpy as np

from . import _kernels
from .algebra.scalars import Q
from .algebra.series import TruncatedSeries, s_function
from .partitions import aut, partitions

__all__ = [
    "HurwitzQuery", "HurwitzGuardError", "IdentityViolation", "branch_count",
    "hurwitz_enumerate", "hurwitz_literal", "labelled_hurwitz", "hurwitz_class_algebra", "class_sizes",
    "cut_join_matrix", "signed_hurwitz_series", "one_part_series", "stationary_p1_series",
    "stationary_p1_closed", "stationary_p1_hurwitz",
]


class HurwitzGuardError(ValueError):
    """The query is outside the tractability guard of the brute-force oracle."""


class IdentityViolation(AssertionError):
    """Two independent constructions of the same quantity disagree."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


def _canon(p) -> tuple:
    p = tuple(sorted((int(x) for x in p), reverse=True))
    if not p or any(x <= 0 for x in p):
        raise ValueError(f"not a partition: {p}")
    return p


@dataclass(frozen=True)
class HurwitzQuery:
    m: int
    rho: tuple
    lam: tuple
    genus: int

    def __post_init__(self):
        object.__setattr__(self, "rho", _canon(self.rho))
        object.__setattr__(self, "lam", _canon(self.lam))
        if sum(self.rho) != self.m or sum(self.lam) != self.m:
            raise ValueError(f"rho and lambda must be partitions of m={self.m}")
        if self.genus < 0:
            raise ValueError("genus must be nonnegative")

    @property
    def r(self) -> int:
        return branch_count(self.genus, self.rho, self.lam)


def branch_count(g: int, rho, lam) -> int:
    return 2 * g - 2 + len(rho) + len(lam)


# -- oracle 1: walk in the group algebra ------------------------------------

ENUMERATE_MAX_M = 8


@lru_cache(maxsize=None)
def _group_data(m: int):
    perms = _kernels.all_permutations(m)
    table = _kernels.action_table(perms, _kernels.transpositions(m))
    types = [tuple(int(x) for x in row if x) for row in _kernels.cycle_types(perms)]
    by_type = {}
    for idx, t in enumerate(types):
        by_type.setdefault(t, []).append(idx)
    by_type = {t: np.array(v, dtype=np.int64) for t, v in by_type.items()}
    table.setflags(write=False)
    return table, by_type


def hurwitz_enumerate(q: HurwitzQuery):
    """Brute-force count over all permutations (guard: m <= 3 or r <= 6)."""
    r = q.r
    if r < 0:
        return Q(0)
    if not (q.m <= 3 or r <= 6):
        raise HurwitzGuardError(f"m={q.m}, r={r} exceeds the enumeration guard (m <= 3 or r <= 6); "
                                "use hurwitz_class_algebra")
    if q.m > ENUMERATE_MAX_M:
        raise HurwitzGuardError(f"m={q.m} exceeds {ENUMERATE_MAX_M}; use hurwitz_class_algebra")
    table, by_type = _group_data(q.m)
    n = table.shape[0]
    ntrans = table.shape[1]
    start = by_type[q.rho]
    big = len(start) * max(ntrans, 1) ** r >= 2 ** 62
    counts = np.zeros(n, dtype=object if big else np.int64)
    counts[start] = 1
    if ntrans == 0:
        return Q(1 if r == 0 and q.rho == q.lam else 0)
    final = _kernels.walk(table, counts, r)
    total = sum(int(x) for x in final[by_type[q.lam]])
    return Q(total, factorial(q.m))


def _cycle_type(p) -> tuple:
    seen = [False] * len(p)
    out = []
    for s in range(len(p)):
        if not seen[s]:
            k, j = 0, s
            while not seen[j]:
                seen[j] = True
                j = p[j]
                k += 1
            out.append(k)
    return tuple(sorted(out, reverse=True))


def hurwitz_literal(q: HurwitzQuery):
    """Literal tuple enumeration with itertools; only for tiny cases."""
    r = q.r
    if r < 0:
        return Q(0)
    m = q.m
    perms = list(permutations(range(m)))
    trans = []
    for a in range(m):
        for b in range(a + 1, m):
            t = list(range(m))
            t[a], t[b] = b, a
            trans.append(tuple(t))
    count = 0
    for sigma in perms:
        if _cycle_type(sigma) != q.rho:
            continue
        for taus in product(trans, repeat=r):
            p = sigma
            for t in taus:
                p = tuple(p[t[i]] for i in range(m))
            if _cycle_type(p) == q.lam:
                count += 1
    return Q(count, factorial(m))


# -- oracle 2: cut-and-join on the class basis -------------------------------

CLASS_ALGEBRA_MAX_M = 8
CLASS_ALGEBRA_MAX_G = 5


def class_sizes(m: int) -> dict:
    """|C_lambda| = m! / z_lambda."""
    out = {}
    for lam in partitions(m):
        z = 1
        for part, mult in Counter(lam).items():
            z *= part ** mult * factorial(mult)
        out[lam] = factorial(m) // z
    return out


def _transitions(lam: tuple) -> Counter:
    """For a fixed permutation of type lam, count transpositions tau by the type of sigma*tau."""
    out = Counter()
    parts = list(lam)
    for i, L in enumerate(parts):
        rest = parts[:i] + parts[i + 1:]
        for k in range(1, L // 2 + 1):
            ways = L if 2 * k != L else L // 2
            out[tuple(sorted(rest + [k, L - k], reverse=True))] += ways
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            rest = [p for t, p in enumerate(parts) if t not in (i, j)]
            out[tuple(sorted(rest + [parts[i] + parts[j]], reverse=True))] += parts[i] * parts[j]
    return out


@lru_cache(maxsize=None)
def cut_join_matrix(m: int):
    """(classes, M) with T * C_mu = sum_lambda M[lambda][mu] C_lambda for the transposition class-sum T."""
    classes = tuple(partitions(m))
    sizes = class_sizes(m)
    idx = {c: i for i, c in enumerate(classes)}
    n = len(classes)
    M = [[0] * n for _ in range(n)]
    for mu in classes:
        for lam, ways in _transitions(mu).items():
            num = sizes[mu] * ways
            if num % sizes[lam]:
                raise ArithmeticError("class-algebra structure constant is not integral")
            M[idx[lam]][idx[mu]] += num // sizes[lam]
    return classes, tuple(tuple(row) for row in M)


@lru_cache(maxsize=None)
def _class_powers(m: int, rho: tuple, steps: int) -> tuple:
    classes, M = cut_join_matrix(m)
    n = len(classes)
    vec = [0] * n
    vec[classes.index(rho)] = 1
    out = [tuple(vec)]
    for _ in range(steps):
        vec = [sum(M[i][j] * vec[j] for j in range(n)) for i in range(n)]
        out.append(tuple(vec))
    return tuple(out)


def hurwitz_class_algebra(q: HurwitzQuery):
    """H^g via powers of the cut-and-join matrix (m <= 8, g <= 5)."""
    if q.m > CLASS_ALGEBRA_MAX_M or q.genus > CLASS_ALGEBRA_MAX_G:
        raise ValueError(f"class-algebra oracle supports m <= {CLASS_ALGEBRA_MAX_M}, "
                         f"g <= {CLASS_ALGEBRA_MAX_G}")
    r = q.r
    if r < 0:
        return Q(0)
    classes, _ = cut_join_matrix(q.m)
    c = _class_powers(q.m, q.rho, r)[r][classes.index(q.lam)]
    return Q(c * class_sizes(q.m)[q.lam], factorial(q.m))


# -- generating series -------------------------------------------------------

def labelled_hurwitz(q: HurwitzQuery, oracle=hurwitz_class_algebra):
    """Count with the preimages of both branch points labelled: |Aut rho||Aut lambda| H^g."""
    return aut(q.rho) * aut(q.lam) * oracle(q)


def signed_hurwitz_series(rho, lam, u_order: int, oracle=hurwitz_class_algebra) -> TruncatedSeries:
    """sum_g (-1)^g m^{1-r}/r! |Aut rho||Aut lambda| H^g_{rho,lambda} u^{2g} (u_order exclusive)."""
    rho, lam = _canon(rho), _canon(lam)
    m = sum(rho)
    coeffs = {}
    for g in range((u_order + 1) // 2):
        r = branch_count(g, rho, lam)
        if r < 0:
            continue
        h = labelled_hurwitz(HurwitzQuery(m, rho, lam, g), oracle)
        if h:
            coeffs[(2 * g, ())] = (-1) ** g * Q(m) ** (1 - r) / factorial(r) * h
    return TruncatedSeries(coeffs, u_order, 0)


def one_part_series(rho, u_order: int) -> TruncatedSeries:
    """prod S(rho_i u) / S(u), sin convention."""
    rho = _canon(rho)
    out = TruncatedSeries.constant(Q(1), u_order)
    for part in rho:
        out = out * s_function(part, "sin", u_order)
    return out / s_function(1, "sin", u_order)


def stationary_p1_closed(mu, nu, u_order: int) -> TruncatedSeries:
    mu, nu = _canon(mu), _canon(nu)
    out = TruncatedSeries.constant(Q(1, aut(mu) * aut(nu)), u_order)
    for part in mu + nu:
        out = out * s_function(part, "sin", u_order)
    return out / s_function(1, "sin", u_order)


def stationary_p1_hurwitz(mu, nu, u_order: int) -> TruncatedSeries:
    mu, nu = _canon(mu), _canon(nu)
    m = sum(mu)
    hm = signed_hurwitz_series(mu, (m,), u_order)
    hn = signed_hurwitz_series(nu, (m,), u_order)
    return (hm * hn * s_function(1, "sin", u_order)).scale(Q(1, aut(mu) * aut(nu)))


def stationary_p1_series(mu, nu, u_order: int) -> TruncatedSeries:
    """sum_g (-1)^g <mu|tau_r(omega)|nu>^{P^1}_g u^{2g}, checked against the Hurwitz route."""
    mu, nu = _canon(mu), _canon(nu)
    if sum(mu) != sum(nu):
        raise ValueError("mu and nu must have equal size")
    closed = stationary_p1_closed(mu, nu, u_order)
    via = stationary_p1_hurwitz(mu, nu, u_order)
    bad = closed.first_disagreement(via)
    if bad is not None:
        raise IdentityViolation(f"stationary P^1 constructions disagree at {bad[0]}: {bad[1]} vs {bad[2]}",
                                witness=(mu, nu, bad))
    return closed
