"""The level -2 Virasoro-type relation for degree-1 reduced invariants of A_1.

The relation removes one descendent of 1:

    c_L [1/2]^a_0 < tau_{a+1}(1) X >_g
        =  e1 * -(2a+2) * phi_a       < tau_a(omega) X >_g
         + e2 * sum_i [a_i-1/2]^a_0   < tau_{a_i+a}(1) X - tau_{a_i}(1) >_g
         + e3 * sum_i ([a_i+1/2]^a_0 - [a_i-1/2]^a_0) < tau_{a_i+a-1}(omega) X' >_g
         + e4 * sum_j [b_j+1/2]^a_0   < tau_{b_j+a}(omega) X - tau_{b_j}(omega) >_g
         + e5 * sum_m (-1)^m [-m-1/2]^a_0 < tau_m(omega) tau_{a-m-1}(omega) X >_{g or g-1}

with X = prod tau_{a_i}(1) prod tau_{b_j}(omega).  Taken literally (PRINTED)
the relation does not hold, so the signs e_k, the genus of the last line, the
factor c_L, whether X' keeps the divisor insertions, and phi_a (1 or
[1/2]^a_0) are parameters; a :class:`ConventionChoice` fixes all of them and
the closed formula arbitrates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement, product

from .algebra.scalars import Q
from .geometry import build_surface
from .invariants import InvariantSpec, reduced_invariant, stationary_factor

__all__ = [
    "bracket", "ConventionChoice", "PRINTED", "convention_family", "virasoro_grid",
    "virasoro_residual", "resolve_convention", "ResolutionReport", "forward_solve",
    "forward_solver_check",
]


def bracket(alpha, p: int, q: int):
    """Coefficient of x^q in (x+alpha)(x+alpha+1)...(x+alpha+p)."""
    if p < 0 or not 0 <= q <= p + 1:
        raise ValueError(f"need p >= 0 and 0 <= q <= p+1, got p={p}, q={q}")
    alpha = Q(alpha)
    poly = [Q(1)]
    for j in range(p + 1):
        c = alpha + j
        new = [Q(0)] * (len(poly) + 1)
        for k, x in enumerate(poly):
            new[k] += x * c
            new[k + 1] += x
        poly = new
    return poly[q]


@dataclass(frozen=True)
class ConventionChoice:
    signs: tuple = (1, 1, 1, 1, 1)
    final_genus: str = "g"
    lhs_factor: int = 1
    third_line_divisors: bool = False
    first_line_bracket: bool = False

    def label(self) -> str:
        sg = "".join("+" if x > 0 else "-" for x in self.signs)
        return (f"signs={sg} final={self.final_genus} lhs={self.lhs_factor} "
                f"line3-divisors={'yes' if self.third_line_divisors else 'no'} "
                f"line1-bracket={'yes' if self.first_line_bracket else 'no'}")


PRINTED = ConventionChoice()


def convention_family(extended: bool = True) -> list:
    """All candidate conventions; ``extended`` adds the first-line bracket option."""
    out = []
    for signs in product((1, -1), repeat=5):
        for final in ("g", "g-1"):
            for lf in (1, 2):
                for l3 in (False, True):
                    for l1 in ((False, True) if extended else (False,)):
                        out.append(ConventionChoice(signs, final, lf, l3, l1))
    return out


def _inv(g, A, B):
    if g < 0:
        return Q(0)
    spec = InvariantSpec.a1(g, identity=tuple(A), stationary=tuple(B))
    return reduced_invariant(spec).value


def _lines(a, g, A, B, evaluate, conv: ConventionChoice):
    br = bracket
    A, B = list(A), list(B)
    phi = br(Q(1, 2), a, 0) if conv.first_line_bracket else Q(1)
    l1 = -(2 * a + 2) * phi * evaluate(g, A, [a] + B)
    l2 = Q(0)
    l3 = Q(0)
    for i, ai in enumerate(A):
        rest = A[:i] + A[i + 1:]
        l2 += br(Q(ai) - Q(1, 2), a, 0) * evaluate(g, rest + [ai + a], B)
        coef = br(Q(ai) + Q(1, 2), a, 0) - br(Q(ai) - Q(1, 2), a, 0)
        if coef:
            l3 += coef * evaluate(g, rest, [ai + a - 1] + (B if conv.third_line_divisors else []))
    l4 = Q(0)
    for j, b in enumerate(B):
        l4 += br(Q(b) + Q(1, 2), a, 0) * evaluate(g, A, B[:j] + [b + a] + B[j + 1:])
    gg = g if conv.final_genus == "g" else g - 1
    l5 = Q(0)
    for m in range(a):
        l5 += (-1) ** m * br(-Q(m) - Q(1, 2), a, 0) * evaluate(gg, A, [m, a - m - 1] + B)
    return [l1, l2, l3, l4, l5]


def virasoro_residual(spec: InvariantSpec, convention: ConventionChoice = PRINTED, evaluate=None):
    """LHS minus RHS of the relation, with tau_{a+1}(1) the first identity insertion of ``spec``."""
    if spec.surface.name != "A1" or tuple(spec.beta) != (1,):
        raise ValueError("the relation is stated for A_1 in degree 1")
    if not spec.identity or spec.identity[0] < 1:
        raise ValueError("spec must start with a tau_{a+1}(1) insertion, a >= 0")
    evaluate = evaluate or _inv
    a = spec.identity[0] - 1
    A = list(spec.identity[1:])
    B = [b for b, _ in spec.divisors]
    lhs = convention.lhs_factor * bracket(Q(1, 2), a, 0) * evaluate(spec.genus, [a + 1] + A, B)
    lines = _lines(a, spec.genus, A, B, evaluate, convention)
    return lhs - sum(e * x for e, x in zip(convention.signs, lines))


def virasoro_grid(max_genus=3, max_r=2, max_s=2) -> list:
    """Dimension-consistent (g, a, A, B) with a >= 0, a_i >= 1, b_j >= 0."""
    pts = []
    for g in range(max_genus + 1):
        for r in range(max_r + 1):
            for s in range(max_s + 1):
                top = g + r + 1
                for a in range(top):
                    for A in combinations_with_replacement(range(1, top + 1), r):
                        for B in combinations_with_replacement(range(0, top + 1), s):
                            if a + 1 + sum(A) + sum(B) == g + r + 1:
                                pts.append((g, a, A, B))
    return pts


@dataclass
class ResolutionReport:
    best: ConventionChoice
    best_nonzero: int
    grid_size: int
    zero_conventions: list = field(default_factory=list)
    printed_nonzero: int = 0
    printed_residuals: list = field(default_factory=list)
    best_residuals: list = field(default_factory=list)
    minimal_counterexample: tuple | None = None

    @property
    def resolved(self) -> bool:
        return self.best_nonzero == 0


def resolve_convention(max_genus=3, max_r=2, max_s=2, extended: bool = True) -> tuple:
    """Search the convention family for one with all residuals zero on the grid."""
    grid = virasoro_grid(max_genus, max_r, max_s)
    structural = {}
    for final in ("g", "g-1"):
        for l3 in (False, True):
            for l1 in (False, True):
                conv = ConventionChoice((1,) * 5, final, 1, l3, l1)
                rows = []
                for g, a, A, B in grid:
                    lhs = bracket(Q(1, 2), a, 0) * _inv(g, [a + 1] + list(A), list(B))
                    rows.append((lhs, _lines(a, g, A, B, _inv, conv)))
                structural[(final, l3, l1)] = rows

    def residuals(conv):
        rows = structural[(conv.final_genus, conv.third_line_divisors, conv.first_line_bracket)]
        return [conv.lhs_factor * lhs - sum(e * x for e, x in zip(conv.signs, lines))
                for lhs, lines in rows]

    best, best_bad, zeros = None, None, []
    for conv in convention_family(extended):
        res = residuals(conv)
        bad = sum(1 for x in res if x)
        if bad == 0:
            zeros.append(conv)
        if best_bad is None or bad < best_bad:
            best, best_bad = conv, bad
    printed = residuals(PRINTED)
    printed_list = [(pt, x) for pt, x in zip(grid, printed) if x]
    best_list = [(pt, x) for pt, x in zip(grid, residuals(best)) if x]
    minimal = min(printed_list, key=lambda t: (t[0][0] + t[0][1] + len(t[0][2]) + len(t[0][3]), t[0]),
                  default=None)
    report = ResolutionReport(best, best_bad, len(grid), zeros, len(printed_list), printed_list,
                              best_list, minimal)
    return best, report


def stationary_a1(g: int, B) -> object:
    """Degree-1 stationary values <prod tau_b(omega)>_{g,1} = prod b!/(2b+1)! (-1/2)^b, g = sum b."""
    if g < 0 or sum(B) != g:
        return Q(0)
    out = Q(1)
    for b in B:
        out *= stationary_factor(b)
    return out


def forward_solve(convention: ConventionChoice):
    """Evaluator for <prod tau_a(1) prod tau_b(omega)>_{g,1} built only from the relation."""
    if any(x == 0 for x in (convention.lhs_factor,)):
        raise ValueError("degenerate convention")

    @lru_cache(maxsize=None)
    def solve(g, A, B):
        if g < 0:
            return Q(0)
        if any(a < 0 for a in A) or any(b < 0 for b in B):
            return Q(0)
        if sum(A) + sum(B) != g + len(A):
            return Q(0)
        if not A:
            return stationary_a1(g, B)
        if 0 in A:
            rest = list(A)
            rest.remove(0)
            total = Q(0)
            for i, x in enumerate(rest):
                if x:
                    total += ev(g, rest[:i] + [x - 1] + rest[i + 1:], list(B))
            for j, y in enumerate(B):
                if y:
                    total += ev(g, rest, list(B[:j]) + [y - 1] + list(B[j + 1:]))
            return total
        top = max(A)
        rest = list(A)
        rest.remove(top)
        a = top - 1
        lines = _lines(a, g, rest, list(B), ev, convention)
        rhs = sum((e * x for e, x in zip(convention.signs, lines)), Q(0))
        return rhs / (convention.lhs_factor * bracket(Q(1, 2), a, 0))

    def ev(g, A, B):
        return solve(g, tuple(sorted(A, reverse=True)), tuple(sorted(B, reverse=True)))

    return ev


def forward_solver_check(convention: ConventionChoice, max_genus=3, max_r=3, max_s=2) -> list:
    """Compare the relation-only evaluator with the closed formula; return mismatches."""
    ev = forward_solve(convention)
    bad = []
    for g in range(max_genus + 1):
        for r in range(1, max_r + 1):
            for s in range(max_s + 1):
                top = g + r
                for A in combinations_with_replacement(range(1, top + 1), r):
                    for B in combinations_with_replacement(range(0, top + 1), s):
                        if sum(A) + sum(B) != g + r:
                            continue
                        got = ev(g, list(A), list(B))
                        want = _inv(g, A, B)
                        if got != want:
                            bad.append(((g, A, B), got, want))
    return bad
