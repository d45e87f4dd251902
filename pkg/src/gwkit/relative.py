"""Rubber series and relative three-point functions of A_n x P^1 (beta != 0 sector).

All series carry the variables s1..sn of the surface; every nonzero coefficient
is (t1+t2) times a Gaussian rational.  The beta = 0 contributions are not part
of any output here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import prod

from .algebra.qfit import FitUnderdetermined, RationalFitResult, fit_rational_in_q
from .algebra.ratfunc import RatFunc, T1, T2
from .algebra.scalars import I, Q
from .algebra.series import TruncatedSeries, s_function
from .fock import common_subpartitions, fock_pairing
from .geometry import SurfaceModel, is_root_multiple, s_monomial
from .partitions import WeightedPartition

__all__ = [
    "SECTOR", "RubberSpec", "OutOfScope", "s_names", "rubber_series", "theta_connected",
    "theta_disconnected", "theta_empty", "divisor_partition_function", "operator_kind",
    "ring_structure_constant", "q_rationality_check", "QRationalityReport",
]

SECTOR = "beta!=0"
T_SUM = T1 + T2


class OutOfScope(ValueError):
    """The requested quantity needs data outside the beta != 0 closed formulas."""


def s_names(surface: SurfaceModel) -> tuple:
    """("s",) for A_1, ("s1", ..., "sn") otherwise."""
    if surface.rank == 1:
        return ("s",)
    return tuple(f"s{i}" for i in range(1, surface.rank + 1))


def _pair(root, label: int) -> int:
    return 0 if label == 0 else root[label - 1]


def _check_surface(surface: SurfaceModel):
    if surface.kind != "A":
        raise ValueError("the relative theory is implemented for A_n surfaces")


@dataclass(frozen=True)
class RubberSpec:
    surface: SurfaceModel
    beta: tuple
    mu: WeightedPartition
    nu: WeightedPartition

    def __post_init__(self):
        if self.mu.size != self.nu.size:
            raise ValueError("mu and nu must have equal size")
        if len(self.beta) != self.surface.rank:
            raise ValueError("curve class has the wrong rank")

    @classmethod
    def for_root(cls, surface, i: int, j: int, d: int, mu, nu) -> "RubberSpec":
        beta = tuple(d if i <= k < j else 0 for k in range(1, surface.rank + 1))
        return cls(surface, beta, mu, nu)


def _s_product(parts, mult: int, u_order: int) -> TruncatedSeries:
    out = TruncatedSeries.constant(Q(1), u_order)
    for p in parts:
        out = out * s_function(p * mult, "sin", u_order)
    return out


def _base(mu: WeightedPartition, nu: WeightedPartition, d: int, u_order: int) -> TruncatedSeries:
    """prod S(d mu_i u) prod S(d nu_j u) / S(du)^2 over Q."""
    return _base_cached(tuple(sorted(mu.parts + nu.parts)), d, u_order)


@lru_cache(maxsize=512)
def _base_cached(parts: tuple, d: int, u_order: int) -> TruncatedSeries:
    num = _s_product(parts, d, u_order)
    s = s_function(d, "sin", u_order)
    return num / (s * s)


def rubber_series(spec: RubberSpec, u_order: int) -> TruncatedSeries:
    """(t1+t2) d^{L-3}/(|Aut mu||Aut nu|) prod (alpha.gamma) S(d mu u) prod (alpha.eta) S(d nu u) / S(du)^2."""
    hit = is_root_multiple(spec.beta, spec.surface)
    if hit is None:
        return TruncatedSeries({}, u_order, 0)
    d, root = hit
    pairing = prod(_pair(root, l) for l in spec.mu.labels + spec.nu.labels)
    if not pairing:
        return TruncatedSeries({}, u_order, 0)
    L = spec.mu.length + spec.nu.length
    c = Q(d) ** (L - 3) * pairing / (spec.mu.aut() * spec.nu.aut())
    return _base(spec.mu, spec.nu, d, u_order).map_coefficients(lambda x: T_SUM * (c * x))


def _theta_raw(mu: WeightedPartition, nu: WeightedPartition, surface: SurfaceModel,
               u_order: int, s_cap: int) -> TruncatedSeries:
    """Theta-circle without the (t1+t2) factor; Gaussian-rational coefficients."""
    _check_surface(surface)
    names = s_names(surface)
    L = mu.length + nu.length
    shift = L - 2
    inner = u_order - shift
    labels = mu.labels + nu.labels
    coeffs = {}
    base_order = max(inner, 1)
    base = _base(mu, nu, 1, base_order) if inner > 0 else None
    for root in surface.positive_roots:
        pairing = prod(_pair(root, l) for l in labels)
        height = sum(root)
        if not pairing or height > s_cap:
            continue
        for d in range(1, s_cap // height + 1):
            if base is None:
                break
            c = Q(pairing) * Q(d) ** (L - 3) / (mu.aut() * nu.aut())
            mono = s_monomial(tuple(d * x for x in root))
            for (k, _), x in base.rescale_u(d).items():
                key = (k + shift, mono)
                coeffs[key] = coeffs.get(key, Q(0)) + c * x
    return TruncatedSeries(coeffs, u_order, min(shift, u_order), s_cap, names)


def _with_t(series: TruncatedSeries) -> TruncatedSeries:
    return series.map_coefficients(lambda x: T_SUM * x)


def theta_connected(mu, nu, surface: SurfaceModel, u_order: int, s_cap: int) -> TruncatedSeries:
    """Theta-circle(mu, nu): sum over roots alpha_ij (1 <= i < j <= n+1) and degrees d."""
    return _with_t(_theta_raw(mu, nu, surface, u_order, s_cap))


def theta_empty(surface: SurfaceModel, u_order: int, s_cap: int) -> TruncatedSeries:
    """Theta-circle of two empty partitions: (t1+t2) sum (du)^{-2} s^{d alpha}/(d S(du)^2)."""
    e = WeightedPartition()
    return theta_connected(e, e, surface, u_order, s_cap)


def _theta_disc_raw(mu, nu, surface, u_order, s_cap):
    total = None
    for rho, mu1, nu1 in common_subpartitions(mu, nu):
        weight = (-1) ** (rho.size - rho.length) * fock_pairing(rho, rho, surface)
        if not weight:
            continue
        term = _theta_raw(mu1, nu1, surface, u_order, s_cap).scale(weight)
        total = term if total is None else total + term
    if total is None:
        return TruncatedSeries({}, u_order, min(-2, u_order), s_cap, s_names(surface))
    return total


def theta_disconnected(mu, nu, surface: SurfaceModel, u_order: int, s_cap: int) -> TruncatedSeries:
    """Sum over common subpartitions rho of (-1)^{|rho|-l(rho)} <rho|rho> Theta-circle(mu-rho, nu-rho)."""
    return _theta_disc_raw(mu, nu, surface, u_order, s_cap).map_coefficients(lambda x: T_SUM * x)


def operator_kind(rho: WeightedPartition, m: int, rank: int):
    """Classify an operator partition padded with (1,1) parts: ('2',), ('w', k), ('1',) or None."""
    if rho.size != m:
        raise ValueError(f"operator partition has size {rho.size}, expected {m}")
    special = [(p, l) for p, l in rho.pairs if (p, l) != (1, 0)]
    if not special:
        return ("1",)
    if len(special) == 1:
        p, l = special[0]
        if p == 2 and l == 0:
            return ("2",)
        if p == 1 and 1 <= l <= rank:
            return ("w", l)
    return None


def _operator(op, m: int, rank: int):
    if isinstance(op, tuple):
        return op
    if isinstance(op, WeightedPartition):
        kind = operator_kind(op, m, rank)
        if kind is None:
            raise OutOfScope(f"operator {op} is not a divisor or identity operator; its structure "
                             "constants need the beta = 0 local theory of C^2 x P^1")
        return kind
    text = str(op).strip().replace(" ", "")
    if text in ("(2)", "2"):
        return ("2",)
    if text in ("(1)^m", "1", "(1)"):
        return ("1",)
    for prefix in ("(1,w", "(1,omega_", "(1,omega"):
        if text.startswith(prefix) and text.endswith(")"):
            return ("w", int(text[len(prefix):-1]))
    if text.startswith("w"):
        return ("w", int(text[1:] or 1))
    raise ValueError(f"unknown operator {op!r}")


def _derivative_series(mu, nu, kind, surface, u_order, s_cap):
    """d/du Theta-bullet for (2), s_k d/ds_k Theta-bullet for (1, omega_k); (t1+t2) stripped."""
    if kind[0] == "2":
        return _theta_disc_raw(mu, nu, surface, u_order + 1, s_cap).differentiate_u()
    if kind[0] == "w":
        k = kind[1]
        if not 1 <= k <= surface.rank:
            raise ValueError(f"omega_{k} is not a divisor of {surface.name}")
        return _theta_disc_raw(mu, nu, surface, u_order, s_cap).s_log_derivative(k - 1)
    raise ValueError(kind)


def divisor_partition_function(mu, nu, operator, surface: SurfaceModel, u_order: int,
                               s_cap: int) -> TruncatedSeries:
    """Z' (beta != 0 sector) for the operator (2), (1, omega_k) or (1)^m; u_order is exclusive."""
    if mu.size != nu.size:
        raise ValueError("mu and nu must have equal size")
    _check_surface(surface)
    kind = _operator(operator, mu.size, surface.rank)
    L = mu.length + nu.length
    if kind[0] == "1":
        return TruncatedSeries({}, u_order, min(0, u_order), s_cap, s_names(surface))
    shift = L - 1 if kind[0] == "2" else L
    deriv = _derivative_series(mu, nu, kind, surface, u_order + shift, s_cap)
    return _with_t(deriv.shift_u(-shift))


def ring_structure_constant(mu, nu, rho, surface: SurfaceModel, u_order: int,
                            s_cap: int) -> TruncatedSeries:
    """<mu, nu * rho> = (-iu)^{-m+l(mu)+l(nu)+l(rho)} Z' for divisor rho; <mu|nu> for the identity."""
    _check_surface(surface)
    m = mu.size
    if isinstance(rho, WeightedPartition):
        kind = operator_kind(rho, m, surface.rank)
        if kind is None:
            raise OutOfScope(f"operator {rho} is not a divisor or identity operator; its structure "
                             "constants need the beta = 0 local theory of C^2 x P^1")
    else:
        kind = _operator(rho, m, surface.rank)
    names = s_names(surface)
    if kind[0] == "1":
        return TruncatedSeries.constant(fock_pairing(mu, nu, surface), u_order, s_cap, names)
    L = mu.length + nu.length
    l_rho = m - 1 if kind[0] == "2" else m
    power = -m + L + l_rho
    deriv = _derivative_series(mu, nu, kind, surface, u_order + power, s_cap)
    z = _with_t(deriv).shift_u(-(L - 1 if kind[0] == "2" else L))
    return z.shift_u(power).scale((-I) ** power).truncate(u_order)


@dataclass
class QRationalityReport:
    fits: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    t_factor_checked: bool = True

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def min_spare(self) -> int:
        return min((f.spare_count for f in self.fits.values()), default=0)


def _strip_t(x):
    """x / (t1+t2) as a Gaussian rational, or None if x is not of that form."""
    if not x:
        return Q(0)
    y = x / T_SUM
    return None if isinstance(y, RatFunc) else y


def q_rationality_check(series: TruncatedSeries, max_degree: int, min_spare: int = 10,
                        u_shift: int = 0) -> QRationalityReport:
    """Fit u^{u_shift} * series, one s-monomial at a time, as a rational function of q = -e^{iu}."""
    rep = QRationalityReport()
    shifted = series.shift_u(u_shift) if u_shift else series
    for mono in shifted.monomials():
        sub = shifted.at_monomial(mono)
        stripped = {}
        plain = True
        for (k, _), c in sub.items():
            y = _strip_t(c)
            if y is None:
                plain = False
                break
            stripped[(k, ())] = y
        if plain:
            sub = TruncatedSeries(stripped, sub.u_order, sub.u_offset)
        else:
            rep.t_factor_checked = False
        try:
            fit = fit_rational_in_q(sub, max_degree, min_spare)
        except FitUnderdetermined as exc:
            rep.failures.append((mono, str(exc)))
            continue
        rep.fits[mono] = fit
        if fit.residual_flag or fit.spare_count < min_spare:
            rep.failures.append((mono, f"residual={fit.residual_flag} spare={fit.spare_count}"))
    return rep
