"""Command-line interface.

Exit status is 0 on success, 1 on domain errors (bad measure files, metric
violations, failed law checks) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import experiments as ex
from .harness import LAW_SETS, run_free_extension, run_law_set
from .measure import MeasureError
from .metric import MetricError
from .numeric import format_number, integer_order, to_fraction
from .serialization import coupling_from_csv, coupling_to_csv, load_measure, measure_to_json
from .transport import optimal_coupling

ENV_PREFIX = "WASSALG_"
EXPERIMENTS = ("dirichlet-cauchy", "moment-growth", "density", "moment-convergence")


class UsageError(Exception):
    pass


def _env(name: str, default):
    return os.environ.get(ENV_PREFIX + name, default)


def _order(text: str):
    try:
        value = to_fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"invalid order {text!r}") from exc
    if value < 1:
        raise argparse.ArgumentTypeError(f"order must be >= 1, got {text}")
    if value.denominator == 1:
        return int(value)
    return float(value)


def _orders(text: str):
    return [_order(t) for t in text.replace(",", " ").split()]


def _schedule(text: str):
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid schedule {text!r}") from exc


def _common(p: argparse.ArgumentParser, *, order_default="1"):
    p.add_argument("--p", type=_order, default=_order(_env("P", order_default)), help="order p >= 1")
    p.add_argument("--mode", choices=("float", "exact"), default=_env("MODE", "float"))
    p.add_argument("--format", choices=("text", "csv", "json"), default=_env("FORMAT", "text"))
    p.add_argument("--out", help="write primary output here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wassalg", description="Exact Wasserstein distances and algebra law checks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("distance", help="W_p between two measure files")
    p.add_argument("first")
    p.add_argument("second")
    _common(p)

    p = sub.add_parser("coupling", help="optimal coupling as a CSV table")
    p.add_argument("first")
    p.add_argument("second")
    _common(p)

    p = sub.add_parser("laws", help="randomized algebra law checks")
    p.add_argument("--set", dest="law_set", default="barycentric", choices=sorted(LAW_SETS) + ["all"])
    p.add_argument("--p", dest="orders", type=_orders, default=_orders(_env("P", "2")),
                   help="orders, comma separated (default 2)")
    p.add_argument("--trials", type=int, default=int(_env("TRIALS", "1000")))
    p.add_argument("--seed", type=int, default=int(_env("SEED", "0")))
    p.add_argument("--mode", choices=("float", "exact"), default=_env("MODE", "exact"))
    p.add_argument("--format", choices=("text", "csv"), default=_env("FORMAT", "text"))
    p.add_argument("--out")

    p = sub.add_parser("experiment", help="Dirichlet-measure experiments")
    p.add_argument("name", choices=EXPERIMENTS)
    p.add_argument("--q", type=float, default=2.0)
    p.add_argument("--p", type=_order, default=None)
    p.add_argument("--schedule", type=_schedule, default=list(ex.DEFAULT_SCHEDULE))
    p.add_argument("--m-max", type=int, default=256)
    p.add_argument("--k", type=int, default=8, help="density: target has 2^k atoms")
    p.add_argument("--x0", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=int(_env("SEED", "0")), help="unused by the built-in experiments")
    p.add_argument("--format", choices=("text", "csv"), default=_env("FORMAT", "text"))
    p.add_argument("--out")

    p = sub.add_parser("validate", help="check a measure file, or a coupling table against two measures")
    p.add_argument("first")
    p.add_argument("second", nargs="?")
    p.add_argument("--coupling", help="CSV coupling table to check against FIRST and SECOND")
    p.add_argument("--mode", choices=("float", "exact"), default=_env("MODE", "float"))
    return parser


def _emit(text: str, out: str | None, stdout) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def _table(header, rows, fmt: str) -> str:
    rows = [[format_number(v) if isinstance(v, (float, Fraction)) else str(v) for v in row] for row in rows]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue()
    widths = [max(len(str(h)), *(len(r[i]) for r in rows)) if rows else len(str(h)) for i, h in enumerate(header)]
    lines = ["  ".join(str(h).rjust(w) for h, w in zip(header, widths))]
    lines += ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows]
    return "\n".join(lines) + "\n"


def _check_mode_order(args, orders):
    if getattr(args, "mode", "float") == "exact":
        bad = [q for q in orders if integer_order(q) is None]
        if bad:
            raise UsageError(f"exact mode needs integer orders, got {bad}")


def _load_pair(args, stdin):
    exact = args.mode == "exact"
    if args.first == "-" and args.second == "-":
        raise UsageError("only one measure can come from stdin")
    return load_measure(args.first, exact=exact, stdin=stdin), load_measure(args.second, exact=exact, stdin=stdin)


def _cmd_distance(args, stdout, stdin):
    _check_mode_order(args, [args.p])
    mu, nu = _load_pair(args, stdin)
    res = optimal_coupling(mu, nu, args.p)
    if args.format == "json":
        doc = {"p": args.p, "wp": format_number(res.wp), "cost_p": format_number(res.cost_p)}
        text = json.dumps(doc) + "\n"
    elif args.format == "csv":
        text = _table(["p", "wp", "cost_p"], [[args.p, res.wp, res.cost_p]], "csv")
    else:
        text = format_number(res.wp) + "\n"
    _emit(text, args.out, stdout)
    return 0


def _cmd_coupling(args, stdout, stdin):
    _check_mode_order(args, [args.p])
    mu, nu = _load_pair(args, stdin)
    res = optimal_coupling(mu, nu, args.p)
    if args.format == "json":
        doc = {
            "p": args.p,
            "wp": format_number(res.wp),
            "cost_p": format_number(res.cost_p),
            "rows": measure_to_json(res.coupling.row_measure),
            "cols": measure_to_json(res.coupling.col_measure),
            "matrix": [[format_number(v) for v in row] for row in res.coupling.matrix],
        }
        text = json.dumps(doc) + "\n"
    else:
        text = coupling_to_csv(res.coupling)
    _emit(text, args.out, stdout)
    return 0


def _cmd_laws(args, stdout, stdin):
    _check_mode_order(args, args.orders)
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    exact = args.mode == "exact"
    names = list(LAW_SETS) if args.law_set == "all" else [args.law_set]
    reports = []
    for name in names:
        if name == "free-extension":
            for p in args.orders:
                reports += run_free_extension(p, args.trials, args.seed, exact=exact)
        else:
            reports += run_law_set(name, args.orders, args.trials, args.seed, exact=exact)
    if args.format == "csv":
        rows = [[r.law, r.trials, r.failures, r.vacuous, r.worst_slack, "pass" if r.passed else "fail"] for r in reports]
        text = _table(["law", "trials", "failures", "vacuous", "worst_slack", "status"], rows, "csv")
    else:
        text = "".join(r.summary() + "\n" for r in reports)
        failed = sum(not r.passed for r in reports)
        text += f"{len(reports)} laws checked, {failed} with failures\n"
    _emit(text, args.out, stdout)
    return 0 if all(r.passed for r in reports) else 1


def _cmd_experiment(args, stdout, stdin):
    name = args.name
    if name == "dirichlet-cauchy":
        ps = [args.p] if args.p is not None else [1, 2]
        rows = []
        summary = []
        for p in ps:
            tr = ex.cauchy_experiment(args.q, p, args.schedule)
            rows += [[p, args.q, m, m2, d] for m, m2, d in tr.table()]
            summary.append(f"# p={p} q={args.q:g}: {tr.verdict}, fitted decay exponent {tr.decay_exponent:.6g}")
        text = _table(["p", "q", "m", "2m", "wp"], rows, args.format)
    elif name == "moment-growth":
        ps = [args.p] if args.p is not None else [1, 2]
        rows = []
        summary = []
        for p in ps:
            mg = ex.moment_growth(args.q, p, args.m_max)
            rows += [[p, args.q, m, v] for m, v in mg.rows]
            summary.append(f"# p={p} q={args.q:g}: last increment {mg.increments()[-1]:.6g}" if args.m_max > 1 else "")
        text = _table(["p", "q", "m", "moment"], rows, args.format)
    elif name == "density":
        p = args.p if args.p is not None else 1
        out = ex.density_experiment(p=p, k=args.k)
        rows = [[r.level, r.spacing, r.atoms, r.distance] for r in out]
        summary = [f"# uniform target on 2^{args.k} atoms, p={p}"]
        text = _table(["level", "spacing", "atoms", "wp"], rows, args.format)
    else:
        p = args.p if args.p is not None else 1
        rep = ex.dirichlet_moment_convergence(args.q, p, args.schedule, args.x0)
        rows = [[m, w, g] for m, w, g in zip(args.schedule, rep.w_distances, rep.moment_gaps)]
        summary = [f"# p={p} q={args.q:g} x0={args.x0:g}: {rep.verdict}, root-gap/W constant {rep.constant:.6g}"]
        text = _table(["m", "wp", "moment_gap"], rows, args.format)
    if args.format == "text":
        text += "".join(s + "\n" for s in summary if s)
    _emit(text, args.out, stdout)
    return 0


def _cmd_validate(args, stdout, stdin):
    exact = args.mode == "exact"
    if args.coupling:
        if not args.second:
            raise UsageError("--coupling needs two measure files")
        mu, nu = _load_pair(args, stdin)
        with open(args.coupling) as fh:
            coupling = coupling_from_csv(fh.read(), mu, nu)
        stdout.write(f"ok: coupling {coupling.shape[0]}x{coupling.shape[1]} has the given marginals\n")
        return 0
    for path in [args.first] + ([args.second] if args.second else []):
        mu = load_measure(path, exact=exact, stdin=stdin)
        stdout.write(f"ok: {path}: {len(mu)} atoms on {mu.space.name}\n")
    return 0


COMMANDS = {
    "distance": _cmd_distance,
    "coupling": _cmd_coupling,
    "laws": _cmd_laws,
    "experiment": _cmd_experiment,
    "validate": _cmd_validate,
}


def run(argv=None, stdout=None, stderr=None, stdin=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, stdout, stdin)
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return 2
    except (MeasureError, MetricError, ValueError, OSError, json.JSONDecodeError) as exc:
        stderr.write(f"error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
