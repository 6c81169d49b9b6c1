"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from fractions import Fraction
from pathlib import Path

from superwp.exactcore.poly import Poly, rat_str
from superwp.exactcore.tseries import Caps, TMonomialSeries
from superwp.kernels import d_double_moment, r_moment, sech_moment_poly
from superwp.quadrature import quadrature_oracle
from superwp.serialize import csv_rows, dumps, volpoly_latex, volpoly_text
from superwp.tau.checks import constraint_residual, omk_bridge_check, s0_agreement
from superwp.tau.kappa import kappa_latex, kappa_polynomials
from superwp.tau.solver import ConstraintSpec, solve_constraints
from superwp.tau.translate import translate_partition
from superwp.tau.virasoro import commutator_check
from superwp.verify import DEFAULTS, KERNEL_POINTS_D, KERNEL_POINTS_R, SUITES, run_suite
from superwp.volumes import (
    RecursionSolver, UnverifiedOrderWarning, VolumeId, VolumeTable, disk_direct, disk_laplace,
    laplace_to_volume, solve_volumes,
)

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None = None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _format_poly(poly: Poly, fmt: str) -> str:
    if fmt == "json":
        return dumps(poly.to_json())
    if fmt == "latex":
        return volpoly_latex(poly)
    return volpoly_text(poly)


def _fmt(args) -> str:
    return "json" if getattr(args, "json", False) else "latex" if getattr(args, "latex", False) else "text"


# ---------------------------------------------------------------------------
# volume, disk, moments
# ---------------------------------------------------------------------------

def cmd_volume(args) -> int:
    g, n, m = args.genus, args.ns, args.s_order
    if g < 0 or n < 0 or m < 0 or m % 2:
        raise UsageError("need genus >= 0, ns >= 0 and an even s-order >= 0")
    vid = VolumeId(g, n, m)
    if not vid.stable:
        print(f"note: ({g}, {n}, {m}) is unstable; volume is 0 by convention", file=sys.stderr)
        _emit(_format_poly(Poly.zero(n), _fmt(args)))
        return OK
    if n == 0:
        raise UsageError("n = 0 volumes are not produced by the recursion; use `tau solve`")
    solver = RecursionSolver(extended=args.extended)
    if not solver.allowed(g, n, m):
        raise UsageError(f"s^{m} for (g, n) = ({g}, {n}) is beyond the guaranteed orders; "
                         "pass --extended for conjectural output")
    if args.extended and not RecursionSolver().allowed(g, n, m):
        print("note: unverified order", file=sys.stderr)
    _emit(_format_poly(solver.volume(g, n, m), _fmt(args)))
    return OK


def cmd_disk(args) -> int:
    if args.s_max < 0:
        raise UsageError("--s-max must be >= 0")
    series = laplace_to_volume(disk_laplace(args.s_max)) if args.route == "laplace" \
        else disk_direct(args.s_max)
    rows = []
    for m in range(2, args.s_max + 1, 2):
        raw = series[m] * math.factorial(m)
        rows.append((m, raw))
    if args.json:
        _emit(dumps({"route": args.route, "s_max": args.s_max,
                     "volumes": {str(m): v.to_json() for m, v in rows}}))
    else:
        fmt = volpoly_latex if args.latex else volpoly_text
        _emit("\n".join(f"s^{m}/{m}!: {fmt(v)}" for m, v in rows) or "0")
    return OK


def cmd_moments(args) -> int:
    if args.i < 0 or (args.j is not None and args.j < 0):
        raise UsageError("moment indices must be >= 0")
    if args.kernel == "D":
        if args.j is None:
            poly = sech_moment_poly(args.i)
            kind, powers, points = "D-single", 2 * args.i + 1, KERNEL_POINTS_D
        else:
            poly = d_double_moment(args.i, args.j)
            kind, powers, points = "D-double", (2 * args.i + 1, 2 * args.j + 1), KERNEL_POINTS_D
    else:
        if args.j is not None:
            raise UsageError("the R kernel takes a single index")
        poly = r_moment(args.i)
        kind, powers, points = "R-single", 2 * args.i + 1, KERNEL_POINTS_R
    out = {"kernel": args.kernel, "i": args.i, "j": args.j, "moment": poly.to_json()}
    status = OK
    if args.check:
        report = []
        for pt in points:
            exact = poly(*pt) if isinstance(pt, tuple) else poly(pt)
            num = quadrature_oracle(kind, powers, pt)
            rel = abs(num - exact) / abs(exact) if exact else abs(num)
            report.append({"point": list(pt) if isinstance(pt, tuple) else [pt],
                           "closed_form": exact, "quadrature": num, "rel_err": rel,
                           "ok": rel <= args.rtol})
        out["check"] = report
        if not all(r["ok"] for r in report):
            status = FAILED
    _emit(dumps(out))
    return status


# ---------------------------------------------------------------------------
# tau
# ---------------------------------------------------------------------------

def _tau_caps(args, family: str) -> Caps:
    s_max = args.s_max if args.s_max is not None else (DEFAULTS["s_disk"] if family == "zk"
                                                       else DEFAULTS["s_general"])
    if s_max < 0 or s_max % 2 or args.genus_max < 0 or args.t_max < 0 or args.n_max < 1:
        raise UsageError("need even --s-max >= 0, --genus-max >= 0, --t-max >= 0, --n-max >= 1")
    return Caps(args.t_max, args.genus_max - 1 + s_max // 2, s_max, args.n_max)


def _solve(args, family: str) -> TMonomialSeries:
    caps = _tau_caps(args, family)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return solve_constraints(ConstraintSpec(family, extended=args.extended), caps)


def cmd_tau_solve(args) -> int:
    which = args.which
    if which == "z":
        caps = _tau_caps(args, "zbar")
        # room for the t-factors absorbed by the translation
        args.n_max = args.n_max + caps.q_max
        series = translate_partition(_solve(args, "zbar"))
    else:
        series = _solve(args, which)
    for note in series.notes:
        print(f"note: {note}", file=sys.stderr)
    if args.json:
        _emit(dumps(series.to_json()))
    else:
        lines = []
        for t, c in series.readable_items():
            times = "*".join(f"t{i}" for i in t.times) or "1"
            pi = f" pi^{2 * t.pk}" if t.pk else ""
            lines.append(f"hbar^{t.a} s^{t.sigma}{pi} {times}: {rat_str(c)}")
        _emit("\n".join(lines) or "0")
    return OK


def cmd_tau_check(args) -> int:
    results = []
    if args.commutators:
        for m in range(-1, args.top + 1):
            for n in range(-1, m):
                r = commutator_check(m, n)
                results.append((f"[L_{m}, L_{n}]", r.ok))
    if args.residual or args.bridge:
        caps = Caps(args.t_max, args.genus_max, 2, args.n_max)
        fbar = solve_constraints("zbar", caps)
        fk = solve_constraints("zk", caps)
        if args.residual:
            for m in range(args.t_max + 1):
                results.append((f"zbar residual m={m}", constraint_residual(fbar, m, "zbar").ok))
                results.append((f"zk residual m={m}", constraint_residual(fk, m, "zk").ok))
        if args.bridge:
            results.append(("bridge s^0, s^2", omk_bridge_check(fbar, fk).ok))
            results.append(("Z^K = Zbar at s = 0", s0_agreement(fbar, fk).ok))
    if not results:
        raise UsageError("choose at least one of --bridge, --residual, --commutators")
    if args.json:
        _emit(dumps({"checks": [{"id": k, "ok": ok} for k, ok in results]}))
    else:
        _emit("\n".join(f"{'PASS' if ok else 'FAIL'} {k}" for k, ok in results))
    return OK if all(ok for _, ok in results) else FAILED


# ---------------------------------------------------------------------------
# verify, export
# ---------------------------------------------------------------------------

def cmd_verify(args) -> int:
    report = run_suite(args.suite)
    if args.json:
        _emit(dumps(report.to_json()))
    else:
        _emit(report.summary())
    if args.report:
        Path(args.report).write_text(dumps(report.to_json()))
    return report.exit_status


def _volume_rows(table: VolumeTable):
    for vid in table:
        for key, c in table.entries[vid].sorted_items():
            yield (vid.g, vid.n, vid.m, " ".join(map(str, key[:-1])), key[-1], c)


def _tau_rows(series: TMonomialSeries):
    for t, c in series.readable_items():
        yield (t.a, t.sigma, t.pk, " ".join(map(str, t.times)), c)


def cmd_export(args) -> int:
    fmt = args.format
    if args.what == "kappa":
        ks = kappa_polynomials(args.m_max)
        if fmt == "latex":
            text = "\n".join(f"K_{m} = {kappa_latex(k)}" for m, k in enumerate(ks, start=1))
        elif fmt == "json":
            text = dumps({"kind": "kappa", "polynomials": [
                [{"partition": list(p), "c": rat_str(c)} for p, c in sorted(k.items())]
                for k in ks]})
        else:
            text = csv_rows(("m", "partition", "c"),
                            ((m, " ".join(map(str, p)), c) for m, k in enumerate(ks, start=1)
                             for p, c in sorted(k.items())))
    elif args.what == "volumes":
        orders = sorted({int(x) for x in args.s_orders.split(",")})
        if any(m % 2 or m < 0 for m in orders):
            raise UsageError("--s-orders must list even orders")
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", UnverifiedOrderWarning)
            table = solve_volumes(args.genus_max, args.n_max, orders, extended=args.extended)
        if args.genus is not None:
            table = VolumeTable({v: p for v, p in table.entries.items() if v.g == args.genus},
                                {v: t for v, t in table.provenance.items() if v.g == args.genus})
        if fmt == "json":
            text = dumps({"kind": "volumes", **table.to_json()})
        elif fmt == "csv":
            text = csv_rows(("g", "n", "m", "l", "p", "c"), _volume_rows(table))
        else:
            text = "\n".join(f"V^({v.m})_({v.g},{v.n}) = {volpoly_latex(table.entries[v])}"
                             for v in table)
    else:
        args.extended = False
        series = _solve(args, args.which)
        if fmt == "json":
            text = dumps({"kind": "tau", "family": args.which, **series.to_json()})
        elif fmt == "csv":
            text = csv_rows(("hbar", "s", "p", "t", "c"), _tau_rows(series))
        else:
            raise UsageError("tau series export supports json and csv")
    _emit(text, args.out)
    return OK


def load_export(path: str | Path):
    """Read a JSON export back into a table, series or list of kappa polynomials."""
    data = json.loads(Path(path).read_text())
    kind = data.get("kind")
    if kind == "volumes":
        return VolumeTable.from_json(data)
    if kind == "tau":
        return TMonomialSeries.from_json(data)
    if kind == "kappa":
        return [{tuple(t["partition"]): Fraction(t["c"]) for t in k} for k in data["polynomials"]]
    raise ValueError(f"unrecognized export kind {kind!r}")


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_format(p, latex: bool = True):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", action="store_true", help="canonical JSON output")
    if latex:
        g.add_argument("--latex", action="store_true", help="LaTeX output in L_i and pi")


def _add_tau_caps(p):
    p.add_argument("--genus-max", type=int, default=DEFAULTS["genus"])
    p.add_argument("--t-max", type=int, default=DEFAULTS["t_max"])
    p.add_argument("--s-max", type=int, default=None,
                   help="highest s-power (default 2; 10 for zk)")
    p.add_argument("--n-max", type=int, default=4, help="largest number of t-factors")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="superwp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("volume", help="one volume polynomial V^(m)_{g,n}")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--ns", type=int, required=True, help="number of NS boundaries")
    p.add_argument("--s-order", type=int, required=True, help="number of Ramond points (even)")
    p.add_argument("--extended", action="store_true", help="allow conjectural orders")
    _add_format(p)
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("disk", help="disk volumes through s^M")
    p.add_argument("--s-max", type=int, required=True)
    p.add_argument("--route", choices=("laplace", "direct"), default="laplace")
    _add_format(p)
    p.set_defaults(func=cmd_disk)

    p = sub.add_parser("moments", help="kernel moment polynomials")
    p.add_argument("--kernel", choices=("D", "R"), required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, default=None)
    p.add_argument("--check", action="store_true", help="compare against quadrature")
    p.add_argument("--rtol", type=float, default=1e-8)
    p.set_defaults(func=cmd_moments)

    tau = sub.add_parser("tau", help="constrained partition functions").add_subparsers(
        dest="tau_command", required=True)
    p = tau.add_parser("solve", help="solve the constraints for log Z")
    p.add_argument("--which", choices=("zbar", "zk", "z"), required=True)
    p.add_argument("--extended", action="store_true", help="allow conjectural s-orders")
    _add_tau_caps(p)
    _add_format(p, latex=False)
    p.set_defaults(func=cmd_tau_solve)
    p = tau.add_parser("check", help="residual, bridge and commutator checks")
    p.add_argument("--bridge", action="store_true")
    p.add_argument("--residual", action="store_true")
    p.add_argument("--commutators", action="store_true")
    p.add_argument("--genus-max", type=int, default=2)
    p.add_argument("--t-max", type=int, default=5)
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--top", type=int, default=4, help="largest operator index for commutators")
    _add_format(p, latex=False)
    p.set_defaults(func=cmd_tau_check)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--report", help="also write the JSON report to this path")
    _add_format(p, latex=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="write tables, series or kappa polynomials")
    p.add_argument("what", choices=("volumes", "tau", "kappa"))
    p.add_argument("--format", choices=("json", "csv", "latex"), default="json")
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--genus", type=int, default=None, help="keep only this genus")
    p.add_argument("--genus-max", type=int, default=DEFAULTS["genus"])
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--s-orders", default="0,2")
    p.add_argument("--extended", action="store_true")
    p.add_argument("--which", choices=("zbar", "zk"), default="zbar")
    p.add_argument("--t-max", type=int, default=DEFAULTS["t_max"])
    p.add_argument("--s-max", type=int, default=None)
    p.add_argument("--m-max", type=int, default=4, help="kappa polynomials K_1..K_M")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"superwp: error: {exc}", file=sys.stderr)
        return USAGE
    except OSError as exc:
        print(f"superwp: error: {exc}", file=sys.stderr)
        return FAILED


if __name__ == "__main__":
    sys.exit(main())
