"""Command-line interface: ``chebmandel {eval,regions,table,plot,verify}``.

Exit codes: 0 success, 1 domain/usage error, 2 convergence failure,
3 verification failure.
"""
import argparse
import csv
import io
import json
import sys

import numpy as np

from . import tables, verify
from .errors import ConvergenceError, DomainError
from .mandel import mandel, scan_regions
from .normalization import normalization
from .oscillator import coherent_moments
from .polyfam import FamilySpec

EXIT_DOMAIN, EXIT_CONVERGENCE, EXIT_VERIFY = 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_DOMAIN, f"{self.prog}: error: {message}\n")


def fmt(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.12g}"
    return str(v)


def emit(header, rows, form, out):
    """Write rows as CSV (header row, '\\n' endings) or as a JSON list of records."""
    if form == "json":
        recs = [{h: _jsonable(v) for h, v in zip(header, r)} for r in rows]
        text = json.dumps(recs, indent=2) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([fmt(v) for v in r])
        text = buf.getvalue()
    _write(text, out)


def _jsonable(v):
    if isinstance(v, (float, np.floating)):
        return float(fmt(v))
    return v


def _write(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _reals(s):
    try:
        return [float(v) for v in s.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated reals, got {s!r}")


def _specs(args):
    return [FamilySpec(args.k, a) for a in args.a]


def _xs(args):
    if args.x is not None:
        xs = list(args.x)
    else:
        xs = [float(v) for v in np.linspace(args.xmin, args.xmax, args.points)]
    for x in xs:
        if not 0 < x < 2:
            raise DomainError(f"x must lie in (0, 2), got {x}")
    return xs


def cmd_eval(args):
    header = ["k", "a", "x", "route", "Q"]
    if args.with_n:
        header += ["N", "dN", "d2N"]
    if args.with_moments:
        header += ["mean", "second_moment", "variance"]
    rows = []
    for spec in _specs(args):
        for x in _xs(args):
            res = mandel(spec, x, args.route, args.tol)
            row = [spec.k, float(spec.a), x, res.route, res.value]
            if args.with_n:
                nf = normalization(spec, x, "series" if args.route == "series" else "closed_general",
                                   args.tol)
                row += [nf.value, nf.d1, nf.d2]
            if args.with_moments:
                m = coherent_moments(spec, x, args.tol)
                row += [m.mean, m.second_moment, m.variance]
            rows.append(row)
    emit(header, rows, args.format, args.out)
    return 0


def cmd_regions(args):
    header = ["k", "a", "region", "kind", "lo", "hi", "sign", "x", "Q"]
    rows = []
    for spec in _specs(args):
        rep = scan_regions(spec, args.grid, args.root_tol, args.min_tol)
        a = float(spec.a)
        for b in rep.boundaries:
            rows.append([spec.k, a, rep.region, "boundary", None, None, None, b, 0.0])
        for lo, hi, s in rep.intervals:
            rows.append([spec.k, a, rep.region, "interval", lo, hi, "+" if s > 0 else "-", None, None])
        for xm, qm in rep.minima:
            rows.append([spec.k, a, rep.region, "minimum", None, None, None, xm, qm])
    emit(header, rows, args.format, args.out)
    return 0


def _intervals(ivs):
    return " ".join(f"({fmt(lo)};{fmt(hi)})" for lo, hi in ivs)


def cmd_table(args):
    header = ["table", "a", "region", "boundaries", "printed_boundaries", "negative",
              "printed_negative", "x_min", "printed_x_min", "q_min", "printed_q_min",
              "boundary_ok", "x_min_ok", "q_min_ok", "pass", "note"]
    rows = []
    checks = tables.check_table(args.name, args.tol_scale, args.grid)
    for c in checks:
        r, p = c.row, c.printed
        rows.append([
            args.name, r.a, r.region,
            " ".join(fmt(b) for b in r.boundaries),
            " ".join("/".join(fmt(v) for v in pair) for pair in p.boundaries),
            _intervals(r.negative), _intervals(p.negative),
            r.x_min, p.x_min, r.q_min, p.q_min,
            c.boundary_ok, c.x_min_ok, c.q_min_ok, c.passed, "; ".join(c.notes),
        ])
    emit(header, rows, args.format, args.out)
    return 0 if all(c.passed for c in checks) else EXIT_VERIFY


def plot_curves(k, avals, xmin, xmax, points, route="auto"):
    xs = [float(v) for v in np.linspace(xmin, xmax, points)]
    cols = [[mandel(FamilySpec(k, a), x, route).value for x in xs] for a in avals]
    return xs, cols


def cmd_plot(args):
    xs = _xs(args)
    cols = [[mandel(spec, x, args.route, args.tol).value for x in xs] for spec in _specs(args)]
    header = ["x"] + [f"Q[a={fmt(a)}]" for a in args.a]
    emit(header, [[x] + [c[i] for c in cols] for i, x in enumerate(xs)], args.format, args.out)
    return 0


def cmd_verify(args):
    only = args.only or None
    if only:
        unknown = [n for n in only if n not in verify.SUITES]
        if unknown:
            raise DomainError(f"unknown suite(s) {unknown}; choose from {sorted(verify.SUITES)}")
    results = verify.run(only, args.tol_scale)
    summary = {"passed": all(r.passed for r in results), "suites": [r.as_dict() for r in results]}
    _write(json.dumps(summary, indent=2) + "\n", args.out)
    return 0 if summary["passed"] else EXIT_VERIFY


def build_parser():
    p = _Parser(prog="chebmandel", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, a_default=None, xrange=(0.01, 1.99, 199)):
        sp.add_argument("--k", type=int, default=1)
        sp.add_argument("--a", type=_reals, required=a_default is None, default=a_default,
                        help="comma-separated perturbation strengths")
        sp.add_argument("--x", type=_reals, help="comma-separated points in (0, 2)")
        sp.add_argument("--xmin", type=float, default=xrange[0])
        sp.add_argument("--xmax", type=float, default=xrange[1])
        sp.add_argument("--points", type=int, default=xrange[2])
        sp.add_argument("--route", choices=["auto", "closed", "series", "moments"], default="auto")
        sp.add_argument("--format", choices=["csv", "json"], default="csv")
        sp.add_argument("--out", default=None, help="output path (default stdout)")
        sp.add_argument("--tol", type=float, default=1e-12)

    sp = sub.add_parser("eval", help="evaluate Q_M at points")
    common(sp)
    sp.add_argument("--with-n", action="store_true", help="also print N, N', N''")
    sp.add_argument("--with-moments", action="store_true", help="also print photon-number moments")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("regions", help="sign regions, boundaries and minima of Q_M")
    common(sp)
    sp.add_argument("--grid", type=int, default=10_000)
    sp.add_argument("--root-tol", type=float, default=1e-10)
    sp.add_argument("--min-tol", type=float, default=1e-8)
    sp.set_defaults(func=cmd_regions)

    sp = sub.add_parser("table", help="recompute a k=2 table and compare with printed values")
    sp.add_argument("name", choices=sorted(tables.TABLES))
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.add_argument("--out", default=None)
    sp.add_argument("--tol-scale", type=float, default=1.0)
    sp.add_argument("--grid", type=int, default=10_000)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("plot", help="CSV curves of Q_M(x) for several a")
    common(sp, a_default=[0.5, 0.65, 1.0, 2.0])
    sp.set_defaults(func=cmd_plot)

    sp = sub.add_parser("verify", help="run the self-verification suites")
    sp.add_argument("--only", type=lambda s: [v for v in s.split(",") if v], default=None)
    sp.add_argument("--tol-scale", type=float, default=1.0)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "k", 1) < 1:
            raise DomainError(f"k must be >= 1, got {args.k}")
        if getattr(args, "tol", 1.0) <= 0:
            raise DomainError("--tol must be positive")
        return args.func(args)
    except DomainError as e:
        print(f"chebmandel: domain error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except ConvergenceError as e:
        print(f"chebmandel: convergence failure: {e}", file=sys.stderr)
        return EXIT_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
