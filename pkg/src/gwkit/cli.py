"""``gw-kit`` command-line interface.

Exit codes: 0 success, 1 usage error, 2 identity violation.
"""

from __future__ import annotations

import argparse
import sys

from .algebra.scalars import Q
from .geometry import alpha, build_surface, is_root_multiple, parse_surface
from .hodge import ab_series, c_series, f0_series, f_series, f_series_normalized
from .hurwitz import (HurwitzQuery, IdentityViolation, hurwitz_class_algebra, hurwitz_enumerate,
                      stationary_p1_series)
from .invariants import InvariantSpec, reduced_invariant
from .partitions import PartitionSyntaxError, parse_partition, parse_weighted_partition
from .relative import (SECTOR, OutOfScope, RubberSpec, divisor_partition_function,
                       ring_structure_constant, rubber_series, theta_connected, theta_disconnected)
from .serialize import FORMATS, OutputDocument, Result, serialize
from .suites import SCOPES, SuiteContext, run_suite
from .virasoro import PRINTED, resolve_convention, forward_solver_check

__all__ = ["main", "run", "UsageError"]

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _ints(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _surface(args):
    try:
        kind, n = parse_surface(args.surface)
        return build_surface(kind, n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _wp(text: str, surface, flag: str):
    try:
        return parse_weighted_partition(text, surface.rank)
    except PartitionSyntaxError as exc:
        raise UsageError(f"{flag}: malformed partition {text!r}: {exc}") from None


def _plain(text: str, flag: str):
    try:
        return parse_partition(text)
    except PartitionSyntaxError as exc:
        raise UsageError(f"{flag}: malformed partition {text!r}: {exc}") from None


def _root(args, surface) -> tuple:
    if getattr(args, "beta", None):
        beta = _ints(args.beta)
        if len(beta) != surface.rank:
            raise UsageError(f"--beta needs {surface.rank} coefficients")
        if is_root_multiple(beta, surface) is None:
            raise UsageError(f"--beta {list(beta)} is not a multiple of a positive root")
        return beta
    if getattr(args, "root", None):
        ij = _ints(args.root)
        if len(ij) != 2:
            raise UsageError("--root takes i,j")
        try:
            root = alpha(surface, *ij)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        root = surface.positive_roots[0]
    return tuple(args.degree * x for x in root)


# -- subcommands -------------------------------------------------------------

def cmd_surface_invariant(args, doc):
    surface = _surface(args)
    beta = _root(args, surface)
    stationary = _ints(args.stationary)
    labels = _ints(args.divisors) if args.divisors else (1,) * len(stationary)
    if len(labels) != len(stationary):
        raise UsageError("--divisors must list one omega index per --stationary entry")
    if any(not 1 <= l <= surface.rank for l in labels):
        raise UsageError("divisor labels must lie in 1..rank")
    try:
        spec = InvariantSpec(surface, args.genus, beta, _ints(args.identity), tuple(zip(stationary, labels)))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    val = reduced_invariant(spec)
    doc.results.append(Result.scalar("value", val.value))
    if val.vanishing_reason:
        doc.notes.append(f"vanishing: {val.vanishing_reason}")


def cmd_rubber(args, doc):
    surface = _surface(args)
    mu, nu = _wp(args.mu, surface, "--mu"), _wp(args.nu, surface, "--nu")
    if mu.size != nu.size:
        raise UsageError("--mu and --nu must have equal size")
    spec = RubberSpec(surface, _root(args, surface), mu, nu)
    doc.results.append(Result.from_series("rubber", rubber_series(spec, args.u_order)))


def cmd_theta(args, doc):
    surface = _surface(args)
    mu, nu = _wp(args.mu, surface, "--mu"), _wp(args.nu, surface, "--nu")
    fn = theta_connected if args.variant == "connected" else theta_disconnected
    doc.results.append(Result.from_series(f"theta-{args.variant}", fn(mu, nu, surface, args.u_order, args.s_cap)))
    doc.notes.append(f"sector: {SECTOR}")


def cmd_divisor_op(args, doc):
    surface = _surface(args)
    mu, nu = _wp(args.mu, surface, "--mu"), _wp(args.nu, surface, "--nu")
    if mu.size != nu.size:
        raise UsageError("--mu and --nu must have equal size")
    try:
        z = divisor_partition_function(mu, nu, args.operator, surface, args.u_order, args.s_cap)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    doc.results.append(Result.from_series("Z'", z))
    doc.notes.append(f"sector: {SECTOR}")


def cmd_ring_constant(args, doc):
    surface = _surface(args)
    mu, nu = _wp(args.mu, surface, "--mu"), _wp(args.nu, surface, "--nu")
    if mu.size != nu.size:
        raise UsageError("--mu and --nu must have equal size")
    if args.rho.strip().startswith("("):
        rho = args.rho
    else:
        rho = _wp(args.rho, surface, "--rho")
        if rho.size != mu.size:
            raise UsageError("--rho must have the same size as --mu")
    try:
        z = ring_structure_constant(mu, nu, rho, surface, args.u_order, args.s_cap)
    except OutOfScope as exc:
        raise UsageError(f"out of scope: {exc}") from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    doc.results.append(Result.from_series("<mu, nu * rho>", z))
    doc.notes.append(f"sector: {SECTOR}")


def cmd_hurwitz(args, doc):
    rho, lam = _plain(args.rho, "--rho"), _plain(args.lam, "--lambda")
    m = args.m if args.m is not None else sum(rho)
    try:
        q = HurwitzQuery(m, rho, lam, args.genus)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    values = {}
    if args.oracle in ("enumerate", "both"):
        try:
            values["enumerate"] = hurwitz_enumerate(q)
        except ValueError as exc:
            if args.oracle == "enumerate":
                raise UsageError(str(exc)) from None
            doc.notes.append(str(exc))
    if args.oracle in ("class-algebra", "both"):
        try:
            values["class-algebra"] = hurwitz_class_algebra(q)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    first = next(iter(values.values()))
    doc.results.append(Result.scalar("value", first))
    if len(values) == 2:
        ok = values["enumerate"] == values["class-algebra"]
        doc.add_verdict("dual-oracle", ok)
        if not ok:
            doc.counterexample = {k: str(v) for k, v in values.items()}


def cmd_stationary_p1(args, doc):
    mu, nu = _plain(args.mu, "--mu"), _plain(args.nu, "--nu")
    if sum(mu) != sum(nu):
        raise UsageError("--mu and --nu must have equal size")
    try:
        s = stationary_p1_series(mu, nu, args.u_order)
    except IdentityViolation as exc:
        doc.add_verdict("two-constructions", False, str(exc))
        doc.counterexample = {"mu": list(mu), "nu": list(nu), "detail": str(exc)}
        return
    doc.results.append(Result.from_series("stationary-p1", s))
    doc.add_verdict("two-constructions", True)


def cmd_hodge(args, doc):
    u, which = args.u_order, args.series
    if which == "f0":
        doc.results.append(Result.from_series("f0", f0_series(u)))
    elif which in ("A", "B"):
        doc.results.append(Result.from_series(f"{which}_{args.k}", ab_series(which, args.k, u)))
    elif which == "C":
        doc.results.append(Result.from_series(f"C_{args.k},{args.l}", c_series(args.k, args.l, u)))
    elif which == "F":
        try:
            s = f_series(args.r, args.degree, u, args.z_order)
        except IdentityViolation as exc:
            doc.add_verdict("closed-form-vs-k-sum", False, str(exc))
            doc.counterexample = {"detail": str(exc)}
            return
        doc.results.append(Result.from_series(f"F_{args.degree}", s))
        doc.add_verdict("closed-form-vs-k-sum", True)
    elif which == "F-normalized":
        doc.results.append(Result.from_series("F/f0", f_series_normalized(u, args.z_order)))


def cmd_virasoro_check(args, doc):
    best, rep = resolve_convention(args.max_genus, args.max_r, args.max_s)
    doc.results.append(Result("resolved-convention", best.label()))
    doc.results.append(Result.scalar("grid-size", Q(rep.grid_size)))
    doc.results.append(Result.scalar("printed-nonzero-residuals", Q(rep.printed_nonzero)))
    lit = rep.minimal_counterexample
    if lit is not None:
        (g, a, A, B), res = lit
        doc.notes.append(f"printed convention, minimal counterexample: g={g} a={a} identity={list(A)} "
                         f"stationary={list(B)} residual={res}")
    from .invariants import InvariantSpec as _Spec
    from .virasoro import virasoro_residual
    demo = virasoro_residual(_Spec.a1(1, identity=(1,), stationary=(1,)), PRINTED)
    doc.results.append(Result.scalar("printed-residual-example", demo))
    doc.add_verdict("residual-free-convention", rep.resolved,
                    "" if rep.resolved else f"best has {rep.best_nonzero} nonzero residuals")
    if rep.resolved:
        bad = forward_solver_check(best, args.max_genus, args.max_r, args.max_s)
        doc.add_verdict("forward-solver", not bad, f"{len(bad)} mismatches" if bad else "")
        if bad:
            (g, A, B), got, want = bad[0]
            doc.counterexample = {"genus": g, "identity": list(A), "stationary": list(B),
                                  "solver": str(got), "formula": str(want)}
    else:
        (g, a, A, B), res = rep.best_residuals[0]
        doc.counterexample = {"genus": g, "a": a, "identity": list(A), "stationary": list(B),
                              "residual": str(res)}


def cmd_identity_suite(args, doc):
    if args.scope != "all" and args.scope not in SCOPES:
        raise UsageError(f"unknown scope {args.scope!r}; choose all or one of {sorted(SCOPES)}")
    ctx = SuiteContext(args.u_order, args.s_cap, args.seed, args.inject_flip)
    for out in run_suite(args.scope, ctx):
        doc.add_verdict(out.name, out.ok, out.detail)
        if not out.ok and doc.counterexample is None:
            doc.counterexample = {"check": out.name, **(out.counterexample or {})}


COMMANDS = {
    "surface-invariant": cmd_surface_invariant,
    "rubber": cmd_rubber,
    "theta": cmd_theta,
    "divisor-op": cmd_divisor_op,
    "ring-constant": cmd_ring_constant,
    "hurwitz": cmd_hurwitz,
    "stationary-p1": cmd_stationary_p1,
    "hodge": cmd_hodge,
    "virasoro-check": cmd_virasoro_check,
    "identity-suite": cmd_identity_suite,
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gw-kit", description="Exact Gromov-Witten, Hurwitz and Hodge series of ADE surfaces.")
    p.add_argument("--format", choices=FORMATS, default="json")
    p.add_argument("--output", help="write the document to this file instead of stdout")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp, surface=True, windows=False, zwin=False):
        sp.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)
        sp.add_argument("--output", default=argparse.SUPPRESS)
        if surface:
            sp.add_argument("--surface", default="A1")
        if windows:
            sp.add_argument("--u-order", type=int, default=8)
            sp.add_argument("--s-cap", type=int, default=4)
        if zwin:
            sp.add_argument("--z-order", type=int, default=3)

    sp = sub.add_parser("surface-invariant", help="reduced descendent invariant")
    common(sp)
    sp.add_argument("--genus", type=int, required=True)
    sp.add_argument("--degree", type=int, default=1)
    sp.add_argument("--root", help="i,j for the A_n root alpha_ij")
    sp.add_argument("--beta", help="curve class coefficients over E_1..E_n")
    sp.add_argument("--identity", default="", help="descendents a_i of the class 1")
    sp.add_argument("--stationary", default="", help="descendents b_j of divisor classes")
    sp.add_argument("--divisors", default="", help="omega index for each stationary insertion")

    sp = sub.add_parser("rubber", help="rubber series for beta = d alpha")
    common(sp, windows=True)
    sp.add_argument("--degree", type=int, default=1)
    sp.add_argument("--root")
    sp.add_argument("--beta")
    sp.add_argument("--mu", required=True)
    sp.add_argument("--nu", required=True)

    sp = sub.add_parser("theta", help="Theta-circle / Theta-bullet series")
    common(sp, windows=True)
    sp.add_argument("--mu", required=True)
    sp.add_argument("--nu", required=True)
    sp.add_argument("--variant", choices=("connected", "disconnected"), default="connected")

    sp = sub.add_parser("divisor-op", help="divisor-operator partition function Z'")
    common(sp, windows=True)
    sp.add_argument("--mu", required=True)
    sp.add_argument("--nu", required=True)
    sp.add_argument("--operator", required=True, help="(2), (1,wk) or (1)^m")

    sp = sub.add_parser("ring-constant", help="ring structure constant <mu, nu * rho>")
    common(sp, windows=True)
    sp.add_argument("--mu", required=True)
    sp.add_argument("--nu", required=True)
    sp.add_argument("--rho", required=True, help="weighted partition, or (2), (1,wk), (1)^m")

    sp = sub.add_parser("hurwitz", help="double Hurwitz number")
    common(sp, surface=False)
    sp.add_argument("--m", type=int)
    sp.add_argument("--rho", required=True)
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--genus", type=int, required=True)
    sp.add_argument("--oracle", choices=("enumerate", "class-algebra", "both"), default="both")

    sp = sub.add_parser("stationary-p1", help="stationary P^1 series")
    common(sp, surface=False)
    sp.add_argument("--mu", required=True)
    sp.add_argument("--nu", required=True)
    sp.add_argument("--u-order", type=int, default=8)

    sp = sub.add_parser("hodge", help="linear Hodge series")
    common(sp, surface=False, zwin=True)
    sp.add_argument("--series", choices=("f0", "A", "B", "C", "F", "F-normalized"), default="F")
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--l", type=int, default=0)
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--degree", type=int, default=1)
    sp.add_argument("--u-order", type=int, default=8)

    sp = sub.add_parser("virasoro-check", help="resolve the level -2 relation's conventions")
    common(sp, surface=False)
    sp.add_argument("--max-genus", type=int, default=3)
    sp.add_argument("--max-r", type=int, default=2)
    sp.add_argument("--max-s", type=int, default=2)

    sp = sub.add_parser("identity-suite", help="run identity suites")
    common(sp, surface=False, windows=True)
    sp.add_argument("--scope", default="all")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--inject-flip", action="store_true",
                    help="flip one sign of the resolved Virasoro convention (exit-code self test)")
    return p


def run(argv) -> tuple:
    """Return (document or None, exit code, error message)."""
    argv = list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise UsageError("a subcommand is required: " + ", ".join(COMMANDS))
        for name in ("u_order", "s_cap", "z_order"):
            if getattr(args, name, 0) is not None and getattr(args, name, 0) < 0:
                raise UsageError(f"--{name.replace('_', '-')} must be nonnegative")
        doc = OutputDocument(command=["gw-kit"] + argv)
        if hasattr(args, "surface"):
            doc.surface = args.surface.upper()
        COMMANDS[args.command](args, doc)
    except UsageError as exc:
        return None, EXIT_USAGE, str(exc), None
    code = EXIT_OK if doc.all_ok else EXIT_VIOLATION
    return doc, code, "", args


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    doc, code, err, args = run(argv)
    if doc is None:
        print(f"gw-kit: usage error: {err}", file=sys.stderr)
        return code
    text = serialize(doc, args.format)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
