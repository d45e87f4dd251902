"""Identity suites: each check returns a verdict and, on failure, a minimal counterexample."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .algebra.ratfunc import T1, T2, scalar_to_str
from .algebra.scalars import Q
from .fock import FockVector, adjoint_check, commutator_check, dual_basis, fock_pairing, label_gram
from .geometry import CohClass, build_surface, equivariant_pairing
from .hodge import (ab_series, c_series, f0_series, factorization_check, inversion_identities,
                    closed_formula_crosscheck, tree_sum_identity)
from .hurwitz import (HurwitzQuery, hurwitz_class_algebra, hurwitz_enumerate, one_part_series,
                      signed_hurwitz_series, stationary_p1_closed, stationary_p1_hurwitz)
from .invariants import InvariantSpec, consistency_suite, reduced_invariant, stationary_grid
from .partitions import WeightedPartition, partitions, weighted_partitions
from .relative import (RubberSpec, divisor_partition_function, q_rationality_check, rubber_series,
                       theta_connected, theta_disconnected)
from .virasoro import ConventionChoice, resolve_convention, virasoro_grid, virasoro_residual

__all__ = ["SuiteContext", "Outcome", "SCOPES", "run_suite"]


@dataclass
class SuiteContext:
    u_order: int = 10
    s_cap: int = 6
    seed: int | None = None
    inject_flip: bool = False

    def sample(self, items: list, fraction: float = 0.5) -> list:
        """All items, or a seeded random subset (order preserved) when a seed is set."""
        if self.seed is None or len(items) <= 4:
            return items
        rng = random.Random(self.seed)
        keep = max(4, int(len(items) * fraction))
        idx = sorted(rng.sample(range(len(items)), keep))
        return [items[i] for i in idx]


@dataclass
class Outcome:
    name: str
    ok: bool
    detail: str = ""
    counterexample: dict | None = None
    seconds: float = 0.0


def _fmt(x) -> str:
    return scalar_to_str(x)


def check_closed_formula(ctx: SuiteContext) -> Outcome:
    for d in range(1, 7):
        v = reduced_invariant(InvariantSpec.a1(0, degree=d)).value
        if v != Q(1, d ** 3):
            return Outcome("closed-formula", False, "<>_{0,d} != 1/d^3", {"degree": d, "got": _fmt(v)})
    v = reduced_invariant(InvariantSpec.a1(1, stationary=(1,))).value
    if v != Q(-1, 12):
        return Outcome("closed-formula", False, "<tau_1(omega)>_{1,1} != -1/12", {"got": _fmt(v)})
    rep = consistency_suite(ctx.sample(stationary_grid(3, 2, 3)))
    if not rep.all_ok:
        first = rep.failures()[0]
        return Outcome("closed-formula", False, f"{first[0]} check failed", {"witness": str(first[1:])})
    n = sum(v[1] for v in rep.counts().values())
    return Outcome("closed-formula", True, f"{n} consistency checks")


def check_geometry(ctx: SuiteContext) -> Outcome:
    a1 = build_surface("A", 1)
    one, om = CohClass.one(1), CohClass.omega(1, 1)
    # dual splitting: (1, 2 t1 t2) and (omega, -2 omega)
    if equivariant_pairing(one, one.scale(2 * T1 * T2), a1) != 1:
        return Outcome("geometry", False, "(1, 2t1t2 * 1) != 1", {"surface": "A1"})
    if equivariant_pairing(om, om.scale(-2), a1) != 1 or equivariant_pairing(one, om, a1) != 0:
        return Outcome("geometry", False, "(omega, -2 omega) splitting fails", {"surface": "A1"})
    for n in range(1, 6):
        s = build_surface("A", n)
        gram = label_gram(s)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if gram[i][j] != -s.cartan_inverse[i - 1][j - 1]:
                    return Outcome("geometry", False, "divisor Gram != -C^{-1}",
                                   {"surface": f"A{n}", "entry": [i, j], "got": _fmt(gram[i][j])})
    counts = {("A", 4): 10, ("D", 4): 12, ("D", 5): 20, ("E", 6): 36, ("E", 7): 63, ("E", 8): 120}
    for (k, n), want in counts.items():
        got = len(build_surface(k, n).positive_roots)
        if got != want:
            return Outcome("geometry", False, "positive root count", {"surface": f"{k}{n}", "got": got})
    return Outcome("geometry", True, "splitting, Gram n<=5, root counts")


def check_fock(ctx: SuiteContext) -> Outcome:
    a1 = build_surface("A", 1)
    bad = commutator_check(a1, 4)
    if bad:
        return Outcome("fock", False, "commutator identity fails", {"witness": list(bad[0])})
    bad = adjoint_check(a1, 3)
    if bad:
        return Outcome("fock", False, "adjoint identity fails", {"witness": list(bad[0])})
    for m in range(0, 4):
        duals = dual_basis(a1, m)
        for x in duals:
            for y, dv in duals.items():
                want = 1 if x == y else 0
                if fock_pairing(FockVector.basis(x), dv, a1) != want:
                    return Outcome("fock", False, "dual basis", {"basis": str(x), "dual_of": str(y)})
    return Outcome("fock", True, "commutators size<=4, adjoint size<=3, duals m<=3")


def _hurwitz_queries(max_m: int, max_r: int) -> list:
    out = []
    for m in range(1, max_m + 1):
        for rho in partitions(m):
            for lam in partitions(m):
                g = 0
                while True:
                    q = HurwitzQuery(m, rho, lam, g)
                    if q.r > max_r:
                        break
                    if q.r >= 0:
                        out.append(q)
                    g += 1
    return out


def check_hurwitz(ctx: SuiteContext) -> Outcome:
    queries = ctx.sample(_hurwitz_queries(3, 6))
    for q in queries:
        a, b = hurwitz_enumerate(q), hurwitz_class_algebra(q)
        if a != b:
            return Outcome("hurwitz", False, "enumeration != class algebra",
                           {"m": q.m, "rho": list(q.rho), "lambda": list(q.lam), "genus": q.genus,
                            "enumerate": _fmt(a), "class_algebra": _fmt(b)})
    order = 8
    for m in range(1, 6):
        for rho in ctx.sample(list(partitions(m))):
            lhs = signed_hurwitz_series(rho, (m,), order)
            bad = lhs.first_disagreement(one_part_series(rho, order))
            if bad:
                return Outcome("hurwitz", False, "signed series != prod S(rho_i u)/S(u)",
                               {"rho": list(rho), "u_power": bad[0][0]})
    return Outcome("hurwitz", True, f"{len(queries)} dual-oracle queries, one-part m<=5 to u^7")


def check_stationary(ctx: SuiteContext) -> Outcome:
    order = max(ctx.u_order, 1) + 1
    n = 0
    for m in range(1, 6):
        parts = list(partitions(m))
        for mu in parts:
            for nu in ctx.sample(parts):
                bad = stationary_p1_closed(mu, nu, order).first_disagreement(
                    stationary_p1_hurwitz(mu, nu, order))
                n += 1
                if bad:
                    return Outcome("stationary-p1", False, "closed form != Hurwitz construction",
                                   {"mu": list(mu), "nu": list(nu), "u_power": bad[0][0]})
    return Outcome("stationary-p1", True, f"{n} pairs to u^{order - 1}")


def check_relative(ctx: SuiteContext) -> Outcome:
    a1, a2 = build_surface("A", 1), build_surface("A", 2)
    order = max(ctx.u_order, 2)
    cap = max(ctx.s_cap, 1)
    for surface in (a1, a2):
        n = surface.rank
        labelled = [wp for m in (1, 2) for wp in weighted_partitions(m, n + 1) if all(wp.labels)]
        for mu in labelled:
            for nu in ctx.sample([x for x in labelled if x.size == mu.size]):
                for i in range(1, n + 1):
                    for j in range(i + 1, n + 2):
                        base = rubber_series(RubberSpec.for_root(surface, i, j, 1, mu, nu), order)
                        L = mu.length + nu.length
                        for d in range(2, 6):
                            got = rubber_series(RubberSpec.for_root(surface, i, j, d, mu, nu), order)
                            want = base.rescale_u(d).scale(Q(d) ** (L - 3))
                            if got.first_disagreement(want):
                                return Outcome("relative", False, "rubber d-scaling",
                                               {"mu": str(mu), "nu": str(nu), "d": d})
                tc = theta_connected(mu, nu, surface, order, cap)
                if tc.first_disagreement(theta_connected(nu, mu, surface, order, cap)):
                    return Outcome("relative", False, "Theta-circle symmetry", {"mu": str(mu), "nu": str(nu)})
                td = theta_disconnected(mu, nu, surface, order, cap)
                if td.first_disagreement(theta_disconnected(nu, mu, surface, order, cap)):
                    return Outcome("relative", False, "Theta-bullet symmetry", {"mu": str(mu), "nu": str(nu)})
                if not set(mu.pairs) & set(nu.pairs) and td.first_disagreement(tc):
                    return Outcome("relative", False, "Theta-bullet != Theta-circle without common parts",
                                   {"mu": str(mu), "nu": str(nu)})
    return Outcome("relative", True, f"A1, A2, m<=2, u<{order}, cap {cap}")


def check_q_rationality(ctx: SuiteContext) -> Outcome:
    a1 = build_surface("A", 1)
    w = WeightedPartition([(1, 1)])
    z = divisor_partition_function(w, w, "(1,w1)", a1, max(ctx.u_order, 60), ctx.s_cap)
    rep = q_rationality_check(z, 20, 10, u_shift=2)
    if not rep.ok:
        mono, why = rep.failures[0]
        return Outcome("q-rationality", False, "rational fit in q fails", {"monomial": list(mono), "why": why})
    return Outcome("q-rationality", True, f"A1 m=1, {len(rep.fits)} s-monomials, min spare {rep.min_spare}")


def check_hodge(ctx: SuiteContext) -> Outcome:
    order = max(ctx.u_order, 4)
    f0 = f0_series(order)
    for k in range(1, 7):
        a = ab_series("A", k, order)
        for l in range(0, 7):
            if (c_series(k, l, order) * f0).first_disagreement(a * ab_series("B", l, order)):
                return Outcome("hodge", False, "C f0 != A B", {"k": k, "l": l})
    rep = inversion_identities(6, order)
    if not rep.ok:
        name = next(iter(rep.failures))
        return Outcome("hodge", False, name, {"witness": str(rep.failures[name])})
    for r in (1, 2, 3):
        fr = factorization_check(r, order, 4)
        if not fr.ok:
            return Outcome("hodge", False, f"factorization r={r}", None)
    for m in range(2, 9):
        for a in range(1, m):
            lhs, rhs = tree_sum_identity(m, a)
            if lhs != rhs:
                return Outcome("hodge", False, "tree sum", {"m": m, "a": a, "lhs": _fmt(lhs), "rhs": _fmt(rhs)})
    cross = closed_formula_crosscheck(min(4, (order - 1) // 2))
    if not cross.ok:
        return Outcome("hodge", False, "F_1 vs closed formula", {"witness": str(cross.failures)})
    return Outcome("hodge", True, f"to u^{order - 1}")


def check_virasoro(ctx: SuiteContext) -> Outcome:
    best, rep = resolve_convention(3, 2, 2)
    conv = best
    if ctx.inject_flip:
        conv = ConventionChoice((-best.signs[0],) + best.signs[1:], best.final_genus, best.lhs_factor,
                                best.third_line_divisors, best.first_line_bracket)
    grid = ctx.sample(virasoro_grid(3, 2, 2))
    bad = []
    for g, a, A, B in grid:
        spec = InvariantSpec.a1(g, identity=(a + 1,) + tuple(A), stationary=tuple(B))
        res = virasoro_residual(spec, conv)
        if res:
            bad.append(((g, a, A, B), res))
    if bad or not rep.resolved:
        (g, a, A, B), res = min(bad, key=lambda t: (sum(t[0][:2]) + len(t[0][2]) + len(t[0][3]), t[0]))
        return Outcome("virasoro", False, f"{len(bad)} nonzero residuals under {conv.label()}",
                       {"genus": g, "a": a, "identity": list(A), "stationary": list(B), "residual": _fmt(res)})
    detail = (f"resolved: {best.label()}; printed convention has {rep.printed_nonzero}/{rep.grid_size} "
              f"nonzero residuals")
    return Outcome("virasoro", True, detail)


SCOPES = {
    "closed-formula": check_closed_formula,
    "geometry": check_geometry,
    "fock": check_fock,
    "hurwitz": check_hurwitz,
    "stationary-p1": check_stationary,
    "relative": check_relative,
    "q-rationality": check_q_rationality,
    "hodge": check_hodge,
    "virasoro": check_virasoro,
}


def run_suite(scope: str, ctx: SuiteContext) -> list:
    names = list(SCOPES) if scope == "all" else [scope]
    out = []
    for name in names:
        if name not in SCOPES:
            raise KeyError(name)
        t = time.perf_counter()
        res = SCOPES[name](ctx)
        res.seconds = time.perf_counter() - t
        out.append(res)
    return out
