"""Linear Hodge series of the A_1 surface: f0, A_k, B_l, C_{k,l} and F_d(u, z_1..z_r).

F_d(u, z_1..z_r) = sum <(-1)^g lambda_{g - sum a_i} prod tau_{a_i}(omega)>_{g,d} u^{2g} prod (-z_i)^{a_i}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb, factorial, prod

from .algebra.scalars import I, Q
from .algebra.series import TruncatedSeries, s_function
from .algebra.special import g_series
from .hurwitz import IdentityViolation
from .invariants import InvariantSpec, reduced_invariant
from .partitions import aut, partitions

__all__ = [
    "f0_series", "ab_series", "c_series", "bracket_series", "f_series", "f_series_normalized",
    "f_ksum", "f_coefficients", "embed_z", "elementary", "complete", "inversion_identities",
    "tree_sum_identity", "IdentityReport", "closed_formula_crosscheck", "a_from_f", "factorization_check",
]


def _S(k: int, u_order: int) -> TruncatedSeries:
    return s_function(k, "sin", u_order)


def f0_series(u_order: int) -> TruncatedSeries:
    """sum (-1)^g <lambda_g>_g u^{2g} = 1/S(u)^2."""
    s = _S(1, u_order)
    return (s * s).inverse()


def ab_series(which: str, index: int, u_order: int) -> TruncatedSeries:
    """A_k(u) (which='A', k >= 1) or B_l(u) (which='B', l >= 0) by their closed forms."""
    if which == "A":
        k = index
        if k < 1:
            raise ValueError("A_k needs k >= 1")
        s1 = _S(1, u_order)
        s1inv = s1.inverse()
        total = TruncatedSeries({}, u_order, 0)
        for j in range(1, k + 1):
            c = Q(factorial(j) * comb(k - 1, k - j)) / Q(k) ** j
            power = s1 ** (j - 2) if j >= 2 else s1inv
            total = total + (_S(j, u_order) * power).scale(c)
        return total
    if which == "B":
        l = index
        if l < 0:
            raise ValueError("B_l needs l >= 0")
        return _S(l + 1, u_order) / _S(1, u_order) ** (l + 1)
    raise ValueError("which is 'A' or 'B'")


def c_series(k: int, l: int, u_order: int) -> TruncatedSeries:
    """C_{k,l} = A_k B_l / f0."""
    return ab_series("A", k, u_order) * ab_series("B", l, u_order) / f0_series(u_order)


def bracket_series(u_order: int, z_order: int, d: int = 1) -> TruncatedSeries:
    """(1/iu) [G(i d z u/(1-e^{-idu}), z) - G(-i d z u/(1-e^{idu}), z)], variable ``z``."""
    plus = g_series(z_order, u_order + 1, "+", d)
    minus = g_series(z_order, u_order + 1, "-", d)
    diff = plus - minus
    out = diff.shift_u(-1).scale(Q(1) / I).truncate(u_order)
    return TruncatedSeries(out.coeffs, out.u_order, 0, out.s_cap, out.names)


def embed_z(series: TruncatedSeries, index: int, r: int) -> TruncatedSeries:
    """Rename the single variable of ``series`` to z_{index+1} among z_1..z_r."""
    names = tuple(f"z{i}" for i in range(1, r + 1))
    coeffs = {}
    for (k, mono), c in series.items():
        new = [0] * r
        new[index] = mono[0] if mono else 0
        coeffs[(k, tuple(new))] = c
    return TruncatedSeries(coeffs, series.u_order, series.u_offset, series.s_cap, names)


def _prefactor(d: int, u_order: int) -> TruncatedSeries:
    s = _S(d, u_order)
    return (s * s).inverse().scale(Q(1, d ** 3))


def f_ksum(u_order: int, z_order: int) -> TruncatedSeries:
    """(1/z) sum_{k>=1} z^k S(ku)/((k-1)! S(u)^k) prod_{i<=k} 1/(1+z/i): F/f0 for d = 1."""
    s1inv = _S(1, u_order).inverse()
    total = TruncatedSeries({}, u_order, 0, z_order, ("z",))
    for k in range(1, z_order + 2):
        factor = [Q(1)] + [Q(0)] * z_order
        for i in range(1, k + 1):
            geo = [Q(-1, i) ** e for e in range(z_order + 1)]
            factor = [sum((factor[a] * geo[b - a] for a in range(b + 1)), Q(0)) for b in range(z_order + 1)]
        zs = {(0, (k - 1 + e,)): c for e, c in enumerate(factor) if k - 1 + e <= z_order and c}
        useries = (_S(k, u_order) * s1inv ** k).scale(Q(1, factorial(k - 1)))
        total = total + useries.with_names(("z",)) * TruncatedSeries(zs, u_order, 0, z_order, ("z",))
    return total


def _geometric_single(d: int, u_order: int, z_order: int) -> TruncatedSeries:
    return bracket_series(u_order, z_order, d) * _prefactor(d, u_order).with_names(("z",))


def f_series(r: int, d: int, u_order: int, z_order: int, check: bool = True) -> TruncatedSeries:
    """F_d(u, z_1..z_r) in the closed form; variables z1..zr, total z-degree <= z_order.

    With ``check`` the single-variable closed form is compared against f0 times the
    k-sum (d = 1) or against the degree-scaled d = 1 series (d > 1).
    """
    if d < 1 or r < 0:
        raise ValueError("need d >= 1 and r >= 0")
    if check:
        geometric = _geometric_single(d, u_order, z_order)
        if d == 1:
            other = f_ksum(u_order, z_order) * f0_series(u_order).with_names(("z",))
        else:
            base = f_ksum(u_order, z_order) * f0_series(u_order).with_names(("z",))
            other = base.rescale_u(d).scale(Q(1, d ** 2))
        bad = geometric.first_disagreement(other)
        if bad is not None:
            raise IdentityViolation(f"closed form and k-sum disagree at {bad[0]}: {bad[1]} vs {bad[2]}",
                                    witness=bad)
    names = tuple(f"z{i}" for i in range(1, r + 1))
    out = _prefactor(d, u_order).with_names(names).truncate(s_cap=z_order)
    if r:
        br = bracket_series(u_order, z_order, d)
        for k in range(r):
            out = out * embed_z(br, k, r)
    return out


def f_series_normalized(u_order: int, z_order: int) -> TruncatedSeries:
    """F_1(u, z)/f0(u), whose z^0 coefficient is 1."""
    return bracket_series(u_order, z_order, 1)


def f_coefficients(u_order: int, m_max: int, normalized: bool = True) -> list:
    """[F_0(u), ..., F_{m_max}(u)], the z-coefficients of F (normalized: of F/f0)."""
    ser = f_series_normalized(u_order, m_max) if normalized else f_series(1, 1, u_order, m_max, check=False)
    out = []
    for m in range(m_max + 1):
        coeffs = {(k, ()): c for (k, mono), c in ser.items() if mono[0] == m}
        out.append(TruncatedSeries(coeffs, u_order, 0))
    return out


def elementary(j: int, values) -> object:
    if j == 0:
        return Q(1)
    return sum((prod(c) for c in combinations(values, j)), Q(0))


def complete(j: int, values) -> object:
    values = list(values)
    if j == 0:
        return Q(1)
    if not values:
        return Q(0)
    # h_j(x_1..x_n) = sum_t x_n^t h_{j-t}(x_1..x_{n-1})
    last, rest = values[-1], values[:-1]
    return sum((last ** t * complete(j - t, rest) for t in range(j + 1)), Q(0))


def a_from_f(k: int, u_order: int) -> TruncatedSeries:
    """F_1(u, z) evaluated at z = k (each u^{2g} coefficient is a polynomial of degree <= g in z)."""
    z_order = u_order // 2 + 1
    ser = f_series(1, 1, u_order, z_order, check=False)
    coeffs = {}
    for (e, mono), c in ser.items():
        coeffs[(e, ())] = coeffs.get((e, ()), Q(0)) + c * Q(k) ** mono[0]
    return TruncatedSeries(coeffs, u_order, 0)


@dataclass
class IdentityReport:
    checks: dict = field(default_factory=dict)

    def record(self, name: str, lhs, rhs):
        if isinstance(lhs, TruncatedSeries):
            bad = lhs.first_disagreement(rhs)
        else:
            bad = None if lhs == rhs else ("value", lhs, rhs)
        self.checks[name] = bad

    @property
    def ok(self) -> bool:
        return all(v is None for v in self.checks.values())

    @property
    def failures(self) -> dict:
        return {k: v for k, v in self.checks.items() if v is not None}


def inversion_identities(m_max: int, u_order: int) -> IdentityReport:
    """B <-> F elementary/complete symmetric inversions and the A-binomial identity, m <= m_max."""
    if m_max < 1:
        raise ValueError("m_max >= 1")
    rep = IdentityReport()
    F = f_coefficients(u_order, m_max)
    B = [ab_series("B", l, u_order) for l in range(m_max + 1)]
    A = [None] + [ab_series("A", k, u_order) for k in range(1, m_max + 1)]
    s1 = _S(1, u_order)
    for m in range(0, m_max + 1):
        recips = [Q(1, j) for j in range(1, m + 1)]
        rhs = TruncatedSeries({}, u_order, 0)
        for k in range(m + 1):
            rhs = rhs + F[k].scale(factorial(m) * elementary(m - k, recips))
        rep.record(f"B_{m} = m! sum e_(m-k) F_k", B[m], rhs)
        inv = TruncatedSeries({}, u_order, 0)
        for k in range(m + 1):
            hk = complete(m - k, [Q(1, j) for j in range(1, k + 2)])
            inv = inv + B[k].scale((-1) ** (m - k) * hk / factorial(k))
        rep.record(f"F_{m} = sum (-1)^(m-k) B_k/k! h_(m-k)(1..1/(k+1))", F[m], inv)
    for m in range(1, m_max + 1):
        lhs = _S(m, u_order) * (s1 ** (m - 2) if m >= 2 else s1.inverse())
        rhs = TruncatedSeries({}, u_order, 0)
        for a in range(1, m + 1):
            rhs = rhs + A[a].scale(Q((-1) ** (m - a) * comb(m, a) * a ** m, factorial(m)))
        rep.record(f"S({m}u)S(u)^{m - 2} = A-binomial", lhs, rhs)
    return rep


def tree_sum_identity(m: int, a: int) -> tuple:
    """(lhs, rhs) of sum_{rho |- m-a} 1/Aut(rho) prod rho_i^{rho_i-1}/rho_i! (-m)^{l(rho)} = -m(-a)^{m-a-1}/(m-a)!."""
    if not 1 <= a <= m - 1:
        raise ValueError("need 1 <= a <= m-1")
    lhs = Q(0)
    for rho in partitions(m - a):
        term = Q(1, aut(rho)) * Q(-m) ** len(rho)
        for p in rho:
            term *= Q(p ** (p - 1), factorial(p))
        lhs += term
    rhs = Q(-m) * Q(-a) ** (m - a - 1) / factorial(m - a)
    return lhs, rhs


def closed_formula_crosscheck(max_genus: int) -> IdentityReport:
    """u^{2g} z^g coefficient of F_1 against <tau_g(omega)>_{g,1} from the closed invariant formula."""
    rep = IdentityReport()
    F = f_series(1, 1, 2 * max_genus + 1, max_genus, check=False)
    for g in range(max_genus + 1):
        got = F.coefficient(2 * g, (g,))
        want = reduced_invariant(InvariantSpec.a1(g, identity=(), stationary=(g,))).value
        rep.record(f"u^{2 * g} z^{g}", got, want)
    return rep


def factorization_check(r: int, u_order: int, z_order: int) -> IdentityReport:
    """F(u, z_1..z_r) = f0^{1-r} prod F(u, z_i), the single-variable factors taken from the k-sum."""
    rep = IdentityReport()
    full = f_series(r, 1, u_order, z_order, check=False)
    f0 = f0_series(u_order)
    single = f_ksum(u_order, z_order) * f0.with_names(("z",))
    names = full.names
    rhs = (f0.inverse() ** (r - 1) if r >= 1 else f0).with_names(names).truncate(s_cap=z_order)
    for k in range(r):
        rhs = rhs * embed_z(single, k, r)
    rep.record(f"F(z1..z{r}) = f0^(1-{r}) prod F(zi)", full, rhs)
    return rep
