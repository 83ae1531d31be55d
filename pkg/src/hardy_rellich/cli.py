"""Command-line front end.

Usage:
    hardy-rellich constants --dim 3 --kmax 3
    hardy-rellich quotient --dim 5 --mode 0 --eps 0.01
    hardy-rellich sweep-eps --dim 4 --eps 0.04,0.02,0.01
    hardy-rellich scan-modes --dim 3 --kmax 5
    hardy-rellich verify --dims 3,4,5,6 --trials 100 --seed 0
    hardy-rellich crosscheck3d --degree 1
    hardy-rellich oracle --dim 3 --kmax 20

Every subcommand accepts ``--format {table,json,csv}``. Reports go to stdout,
diagnostics to stderr. Exit codes: 0 success, 1 verification failure,
2 usage error, 3 numerical or solver failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction
from typing import Sequence

from . import constants as C
from .crosscheck3d import SphericalHarmonic3, sphere_inner
from .errors import DegenerateProfile, NumericalFailure, SolverFailure
from .functionals import minimizing_mode, quotient_ueps, sequence_limit
from .profiles import BUMP_GENERATOR_VERSION
from .spectral import LogGrid, global_constant_estimate, scan_modes, symbol_min, symbol_scan, symbol_value
from .suite import crosscheck_suite, property_suite

__all__ = ["main", "build_parser", "render"]

SCHEMA_VERSION = 1
EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

log = logging.getLogger("hardy_rellich")


def fmt(x) -> str:
    """Fixed 12-significant-digit scientific string (exact rationals go through float)."""
    return f"{float(x):.11e}"


def _exact(x: Fraction) -> str:
    return str(x)


def _float_list(text: str) -> list[float]:
    try:
        vals = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}")


def _dim(text: str) -> int:
    n = int(text)
    if n < 3:
        raise argparse.ArgumentTypeError("dimension must be >= 3")
    return n


def _nonneg(text: str) -> int:
    k = int(text)
    if k < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return k


def _report(command, inputs, rows, columns, summary=None, margins=None, status=True):
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "results": {"columns": columns, "rows": rows, "summary": summary or {}},
        "margins": margins or {},
        "status": "pass" if status else "fail",
    }


# -- subcommands ------------------------------------------------------------


def cmd_constants(args):
    n, kmax = args.dim, args.kmax
    cols = ["quantity", "n", "k", "value", "exact"]
    rows = []

    def add(name, value, k=""):
        rows.append({"quantity": name, "n": n, "k": k, "value": fmt(value), "exact": _exact(value)})

    cn = C.sharp_constant(n)
    add("C", cn)
    add("min_split", C.min_split(n))
    add("weighted_rellich_constant", C.weighted_rellich_constant(n))
    add("weighted_hardy_constant", C.weighted_hardy_constant(n))
    checks = {}
    ok = True
    if n in (3, 4):
        es = C.eps_star(n)
        add("eps_star", es)
        balanced = Fraction(n * n, 4) - es
        add("n2_over_4_minus_eps_star", balanced)
        checks["balanced_minus_C"] = _exact(balanced - cn)
        ok &= balanced == cn
    g1 = C.g_lower(n, 1)
    checks["g1_minus_closed_form"] = _exact(g1 - Fraction(n * n - 2 * n - 2, 2))
    ok &= g1 == Fraction(n * n - 2 * n - 2, 2)
    for k in range(kmax + 1):
        add("c_k", C.eigenvalue_ck(n, k), k)
        add("g", C.g_lower(n, k), k)
        if k >= 1 and n in (3, 4):
            add("h_at_eps_star", C.h_lower(n, C.eps_star(n), k), k)
        if not (n == 4 and k == 0):
            q = C.mode_limit_quotient(n, k)
            add("mode_limit_quotient", q, k)
            ok &= symbol_value(n, k, 0) == q
    if n != 4:
        checks["mode_limit_0_minus_n2_over_4"] = _exact(C.mode_limit_quotient(n, 0) - Fraction(n * n, 4))
        ok &= C.mode_limit_quotient(n, 0) == Fraction(n * n, 4)
    ok &= cn <= Fraction(n * n, 4)
    return _report("constants", {"dim": n, "kmax": kmax}, rows, cols, margins=checks, status=ok)


def _quotient_row(rep, eps):
    m1, m2, m3, m4 = rep.margins
    asym = C.asymptotic_quotient(rep.n, rep.k, eps)
    return {
        "n": rep.n, "k": rep.k, "eps": fmt(eps),
        "numerator": fmt(rep.numerator), "denominator": fmt(rep.denominator),
        "quotient": fmt(rep.quotient), "asymptotic": fmt(asym), "asymptotic_exact": _exact(asym),
        "m1": fmt(m1), "m2": fmt(m2), "m3": fmt(m3), "m4": fmt(m4),
    }


_QCOLS = ["n", "k", "eps", "numerator", "denominator", "quotient", "asymptotic", "asymptotic_exact",
          "m1", "m2", "m3", "m4"]


def _margins_ok(rep, tol):
    s = rep.scale
    m1, m2, m3, m4 = rep.margins
    ok = m1 >= -tol * s and m3 > 0 and m4 >= -tol * s
    if rep.n != 4:
        ok &= m2 >= -tol * s
    return ok


def cmd_quotient(args):
    k = minimizing_mode(args.dim) if args.mode is None else args.mode
    rep = quotient_ueps(args.dim, args.eps, k)
    ok = _margins_ok(rep, args.tol)
    summary = {"C": fmt(C.sharp_constant(args.dim)), "C_exact": _exact(C.sharp_constant(args.dim))}
    return _report("quotient", {"dim": args.dim, "mode": k, "eps": fmt(args.eps), "tol": fmt(args.tol)},
                   [_quotient_row(rep, args.eps)], _QCOLS, summary=summary, status=ok)


def cmd_sweep(args):
    n = args.dim
    k = minimizing_mode(n) if args.mode is None else args.mode
    reps = [quotient_ueps(n, e, k) for e in args.eps]
    rows = [_quotient_row(r, e) for r, e in zip(reps, args.eps)]
    lim = sequence_limit(n, args.eps, k)
    cn = C.sharp_constant(n)
    err = abs(lim.extrapolate - float(cn))
    ok = lim.strictly_decreasing and all(_margins_ok(r, args.tol) for r in reps)
    summary = {
        "extrapolate": fmt(lim.extrapolate), "last": fmt(lim.last),
        "C": fmt(cn), "C_exact": _exact(cn), "extrapolate_abs_error": fmt(err),
        "strictly_decreasing": lim.strictly_decreasing,
        "extrapolate_within_limit_tol": err <= args.limit_tol,
    }
    inputs = {"dim": n, "mode": k, "eps": [fmt(e) for e in args.eps], "tol": fmt(args.tol),
              "limit_tol": fmt(args.limit_tol)}
    return _report("sweep-eps", inputs, rows, _QCOLS, summary=summary, status=ok)


def cmd_scan(args):
    n = args.dim
    grid = LogGrid.from_decades(args.grid_decades, args.grid_points)
    scan = scan_modes(n, args.kmax, grid)
    sym = symbol_scan(n, args.kmax)
    rows = []
    ok = True
    for k, (lam, s) in enumerate(zip(scan.constants, sym.constants)):
        rows.append({"k": k, "lambda": fmt(lam), "symbol_min": fmt(s), "rel_excess": fmt((lam - s) / s)})
        ok &= lam >= s - 1e-6
    expected = minimizing_mode(n)
    ok &= scan.argmin_mode == expected and sym.argmin_mode == expected
    summary = {"argmin_mode": scan.argmin_mode, "symbol_argmin_mode": sym.argmin_mode,
               "expected_mode": expected}
    inputs = {"dim": n, "kmax": args.kmax, "grid_decades": fmt(args.grid_decades),
              "grid_points": args.grid_points}
    return _report("scan-modes", inputs, rows, ["k", "lambda", "symbol_min", "rel_excess"],
                   summary=summary, status=ok)


def cmd_verify(args):
    res = property_suite(tuple(args.dims), args.trials, args.seed, args.kmax, args.tol)
    rows = []
    for s in res:
        row = s.as_row()
        rows.append({k: (fmt(v) if isinstance(v, float) else v) for k, v in row.items()})
        for msg in s.failures[:5]:
            log.warning("n=%d: %s", s.n, msg)
    cols = list(rows[0]) if rows else []
    ok = all(not s.failures for s in res)
    inputs = {"dims": args.dims, "trials": args.trials, "seed": args.seed, "kmax": args.kmax,
              "tol": fmt(args.tol), "generator": BUMP_GENERATOR_VERSION}
    return _report("verify", inputs, rows, cols, status=ok)


def cmd_crosscheck(args):
    rows_raw, eig = crosscheck_suite(args.degree, args.trials, args.seed)
    h = SphericalHarmonic3(args.degree)
    rows = [{
        "profile": r.label, "degree": r.degree,
        "num_direct": fmt(r.num_direct), "num_modes": fmt(r.num_modes), "num_rel": fmt(r.num_rel),
        "den_direct": fmt(r.den_direct), "den_modes": fmt(r.den_modes), "den_rel": fmt(r.den_rel),
    } for r in rows_raw]
    worst = max(max(r.num_rel, r.den_rel) for r in rows_raw)
    ok = worst <= args.tol and eig <= 1e-10
    summary = {"eigen_residual": fmt(eig), "eigenvalue": h.eigenvalue,
               "norm": fmt(sphere_inner(h, h)), "worst_rel": fmt(worst)}
    cols = ["profile", "degree", "num_direct", "num_modes", "num_rel", "den_direct", "den_modes", "den_rel"]
    inputs = {"degree": args.degree, "trials": args.trials, "seed": args.seed, "tol": fmt(args.tol),
              "generator": BUMP_GENERATOR_VERSION}
    return _report("crosscheck3d", inputs, rows, cols, summary=summary, status=ok)


def cmd_oracle(args):
    n = args.dim
    rows = []
    for k in range(args.kmax + 1):
        sm = symbol_min(n, k)
        exact0 = "" if (n == 4 and k == 0) else _exact(symbol_value(n, k, 0))
        rows.append({"k": k, "symbol_min": fmt(sm.value), "xi_at_min": fmt(sm.xi), "symbol_at_0_exact": exact0})
    est = global_constant_estimate(n, args.kmax)
    cn = C.sharp_constant(n)
    sym = symbol_scan(n, args.kmax)
    ok = abs(est - float(cn)) <= 1e-9 and sym.argmin_mode == minimizing_mode(n)
    summary = {"estimate": fmt(est), "C": fmt(cn), "C_exact": _exact(cn), "abs_error": fmt(abs(est - float(cn))),
               "argmin_mode": sym.argmin_mode}
    return _report("oracle", {"dim": n, "kmax": args.kmax}, rows,
                   ["k", "symbol_min", "xi_at_min", "symbol_at_0_exact"], summary=summary, status=ok)


# -- parsing and rendering ---------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")

    parser = argparse.ArgumentParser(prog="hardy-rellich", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", parents=[common], help="exact constants for one dimension")
    p.add_argument("--dim", type=_dim, required=True)
    p.add_argument("--kmax", type=_nonneg, default=3)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("quotient", parents=[common], help="quotient of one member of the minimizing family")
    p.add_argument("--dim", type=_dim, required=True)
    p.add_argument("--mode", type=_nonneg, default=None)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("sweep-eps", parents=[common], help="eps sweep with linear extrapolation")
    p.add_argument("--dim", type=_dim, required=True)
    p.add_argument("--eps", type=_float_list, required=True)
    p.add_argument("--mode", type=_nonneg, default=None)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--limit-tol", type=float, default=1e-2)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("scan-modes", parents=[common], help="discrete per-mode constants on a log grid")
    p.add_argument("--dim", type=_dim, required=True)
    p.add_argument("--kmax", type=_nonneg, default=5)
    p.add_argument("--grid-decades", type=float, default=14.0)
    p.add_argument("--grid-points", type=int, default=4000)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", parents=[common], help="randomized property suite on bump profiles")
    p.add_argument("--dims", type=_int_list, default=[3, 4, 5, 6])
    p.add_argument("--trials", type=_nonneg, default=100)
    p.add_argument("--seed", type=_nonneg, default=0)
    p.add_argument("--kmax", type=_nonneg, default=5)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("crosscheck3d", parents=[common], help="direct (r, theta) quadrature in R^3")
    p.add_argument("--degree", type=int, choices=(0, 1), required=True)
    p.add_argument("--trials", type=_nonneg, default=10)
    p.add_argument("--seed", type=_nonneg, default=0)
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(func=cmd_crosscheck)

    p = sub.add_parser("oracle", parents=[common], help="Mellin-symbol oracle for the per-mode constants")
    p.add_argument("--dim", type=_dim, required=True)
    p.add_argument("--kmax", type=_nonneg, default=20)
    p.set_defaults(func=cmd_oracle)
    return parser


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return ";".join(str(x) for x in v)
    return str(v)


def render(report: dict, form: str) -> str:
    res = report["results"]
    cols, rows = res["columns"], res["rows"]
    if form == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    if form == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([_cell(r.get(c, "")) for c in cols])
        return buf.getvalue()
    cells = [[_cell(r.get(c, "")) for c in cols] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    extra = dict(res["summary"])
    extra.update(report["margins"])
    if extra:
        lines.append("")
        lines += [f"{k}: {_cell(extra[k])}" for k in sorted(extra)]
    lines.append(f"status: {report['status']}")
    return "\n".join(lines) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s", stream=sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        report = args.func(args)
    except (NumericalFailure, SolverFailure, DegenerateProfile) as exc:
        log.error("%s", exc)
        return EXIT_NUMERIC
    except (ValueError, TypeError) as exc:
        log.error("%s", exc)
        return EXIT_USAGE
    sys.stdout.write(render(report, args.format))
    return EXIT_OK if report["status"] == "pass" else EXIT_VERIFY


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
