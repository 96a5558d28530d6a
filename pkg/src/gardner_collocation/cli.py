"""Command-line runner: ``run``, ``scan``, ``stability`` and ``table``."""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .assembly import CLOSURES, PhysicsParams, SolverError
from .experiment import profile_table, run_experiment
from .problems import PRESETS, preset
from .scan import ScanSpec, error_at, scan, write_trace_csv
from .stability import verify_stability
from .tables import TABLE_IDS, build_table, format_table

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL = 0, 1, 2

PROFILE_COLUMNS = ("x", "u_numeric", "v_numeric", "u_exact", "error")
DIAGNOSTIC_COLUMNS = ("t", "linf", "M", "E", "H", "C_M", "C_E", "C_H")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(value) -> str:
    """17 significant digits; blank for missing values."""
    if value is None:
        return ""
    return f"{float(value):.17g}"


def _json_number(value):
    if value is None:
        return None
    value = float(value)
    return value if math.isfinite(value) else str(value)


def _float_list(text):
    try:
        return [float(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _preset_from(args):
    try:
        p = preset(args.preset)
    except KeyError as exc:
        raise UsageError(str(exc.args[0]))
    try:
        return p.with_overrides(n=args.n, dt=args.dt, lam=args.lam, epsilon=args.epsilon,
                                t_end=args.t_end)
    except ValueError as exc:
        raise UsageError(str(exc))


def _out_dir(path):
    out = Path(path)
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".write-probe"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise UsageError(f"output directory {out} is not writable: {exc}")
    return out


def _write_rows(path, header, rows, output_format):
    if output_format == "csv":
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            for row in rows:
                w.writerow([fmt(v) for v in row])
    else:
        cols = {h: [_json_number(r[i]) for r in rows] for i, h in enumerate(header)}
        with open(path, "w") as fh:
            json.dump(cols, fh, indent=1)
            fh.write("\n")


def _config_record(p, args, snapshots):
    return {
        "preset": p.name,
        "mu1": p.params.mu1, "mu2": p.params.mu2, "mu3": p.params.mu3,
        "epsilon": p.params.epsilon, "lambda": p.params.lam,
        "a": p.grid.a, "b": p.grid.b, "n": p.grid.n_intervals,
        "dt": p.dt, "t_end": p.t_end,
        "snapshots": list(snapshots), "closure": args.closure,
        "diag_every": args.diag_every, "format": args.format,
    }


def cmd_run(args) -> int:
    p = _preset_from(args)
    snapshots = args.snapshots
    if snapshots is None:
        snapshots = sorted({0.0, p.t_end, *(t for t in p.report_times if t <= p.t_end)})
    if args.diag_every < 1:
        raise UsageError("--diag-every must be >= 1")
    out = _out_dir(args.out)
    start = time.perf_counter()
    try:
        res = run_experiment(p, snapshots=snapshots, diag_every=args.diag_every,
                             closure=args.closure)
    except ValueError as exc:
        raise UsageError(str(exc))
    wall = time.perf_counter() - start

    ext = args.format
    for t in snapshots:
        cols = profile_table(res.snapshots[t], p)
        n = len(cols["x"])
        rows = [[None if cols[c] is None else cols[c][i] for c in PROFILE_COLUMNS]
                for i in range(n)]
        _write_rows(out / f"profile_t{t:g}.{ext}", PROFILE_COLUMNS, rows, ext)
    diag_rows = [[r.time, r.linf, r.m, r.e, r.h_quantity, r.c_m, r.c_e, r.c_h]
                 for r in res.diagnostics]
    _write_rows(out / f"diagnostics.{ext}", DIAGNOSTIC_COLUMNS, diag_rows, ext)

    last = res.diagnostics[-1]
    if not all(math.isfinite(v) for v in diag_rows[-1] if v is not None):
        raise SolverError("non-finite diagnostics", row=None)
    summary = {
        "config": _config_record(p, args, snapshots),
        "final_time": last.time,
        "linf": _json_number(last.linf),
        "C_M": last.c_m, "C_E": last.c_e, "C_H": last.c_h,
    }
    with open(out / "summary.json", "w") as fh:
        json.dump(summary, fh, indent=1, sort_keys=True)
        fh.write("\n")
    # wall time lives outside the data files so identical runs stay byte-identical
    with open(out / "timing.json", "w") as fh:
        json.dump({"wall_time_s": wall}, fh)
        fh.write("\n")
    linf = "n/a" if last.linf is None else f"{last.linf:.6e}"
    print(f"t={last.time:g}  linf={linf}  C_M={last.c_m:.3e}  C_E={last.c_e:.3e}  "
          f"C_H={last.c_h:.3e}  wall={wall:.2f}s")
    return EXIT_OK


def cmd_scan(args) -> int:
    p = _preset_from(args)
    if p.exact is None:
        raise UsageError(f"preset {p.name!r} has no exact solution to scan against")
    try:
        spec = ScanSpec(lo=args.lo, hi=args.hi, coarse_step=args.coarse_step,
                        refine_rounds=args.refine_rounds, objective_time=args.objective_time)
    except ValueError as exc:
        raise UsageError(str(exc))
    if args.workers < 1:
        raise UsageError("--workers must be >= 1")
    out = _out_dir(args.out)
    if args.workers == 1:
        res = scan(p, spec, closure=args.closure)
    else:
        with ProcessPoolExecutor(args.workers) as pool:
            res = scan(p, spec, map_fn=pool.map, closure=args.closure)
    write_trace_csv(res, out / "scan_trace.csv")
    line = (f"lambda*={res.lambda_star:.17g}  linf*({res.objective_time:g})={res.linf_star:.17g}")
    if res.objective_time != p.t_end:
        final = error_at(p, res.lambda_star, p.t_end, args.closure)
        line += f"  linf({p.t_end:g})={final:.17g}"
    print(f"{line}  evaluations={len(res.trace)}")
    return EXIT_OK


def cmd_stability(args) -> int:
    if args.preset is not None:
        p = _preset_from(args)
        params, h, dt = p.params, p.grid.h, p.dt
    else:
        params = PhysicsParams(args.mu1, args.mu2, args.mu3, lam=args.lam or 0.0)
        if args.h is None or args.dt is None:
            raise UsageError("without --preset, --h and --dt are required")
        h, dt = args.h, args.dt
    try:
        report = verify_stability(params, h, dt, eps_range=(args.eps_lo, args.eps_hi),
                                  n_modes=args.n_modes, n_eps=args.n_eps)
    except ValueError as exc:
        raise UsageError(str(exc))
    out = _out_dir(args.out)
    report.write_csv(out / "stability.csv")
    verdict = "PASS" if report.passed else "FAIL"
    print(f"max|rho1|={report.max_rho1:.17g}  max|rho2|={report.max_rho2:.17g}  "
          f"{verdict} (bound 1+{report.tol:g})")
    return EXIT_OK


def cmd_table(args) -> int:
    try:
        rows = build_table(args.table_id, rows=args.rows, closure=args.closure)
    except ValueError as exc:
        raise UsageError(str(exc))
    print(f"Table {args.table_id}")
    print(format_table(rows))
    if args.out is not None:
        out = _out_dir(args.out)
        with open(out / f"table{args.table_id}.csv", "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["row", "quantity", "computed", "printed", "rel_dev"])
            for row in rows:
                for c in row.cells:
                    w.writerow([row.label, c.name, fmt(c.computed), c.printed, fmt(c.rel_dev)])
    return EXIT_OK


def _add_model_flags(p, preset_required=True):
    p.add_argument("--preset", choices=sorted(PRESETS), required=preset_required)
    p.add_argument("--n", type=int, help="number of grid intervals")
    p.add_argument("--dt", type=float)
    p.add_argument("--lambda", dest="lam", type=float, help="extension parameter")
    p.add_argument("--epsilon", type=float)
    p.add_argument("--t-end", dest="t_end", type=float)
    p.add_argument("--closure", choices=sorted(CLOSURES), default="curvature")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gardner-collocation",
                     description="Extended cubic B-spline collocation for the Gardner equation.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="integrate a preset and export profiles and diagnostics")
    _add_model_flags(run)
    run.add_argument("--snapshots", type=_float_list,
                     help="comma-separated output times (default: 0, report times, t_end)")
    run.add_argument("--diag-every", type=int, default=1, help="diagnostics stride in steps")
    run.add_argument("--out", default="out")
    run.add_argument("--format", choices=("csv", "json"), default="csv")
    run.set_defaults(func=cmd_run)

    sc = sub.add_parser("scan", help="search the extension parameter minimising the error")
    _add_model_flags(sc)
    sc.add_argument("--lo", type=float, default=-1.0)
    sc.add_argument("--hi", type=float, default=1.0)
    sc.add_argument("--coarse-step", type=float, default=0.05)
    sc.add_argument("--refine-rounds", type=int, default=5)
    sc.add_argument("--objective-time", type=float,
                    help="time at which the error is minimised (default: first report time)")
    sc.add_argument("--workers", type=int, default=1, help="processes evaluating candidates")
    sc.add_argument("--out", default="out")
    sc.set_defaults(func=cmd_scan)

    st = sub.add_parser("stability", help="sweep the amplification factors")
    _add_model_flags(st, preset_required=False)
    st.add_argument("--mu1", type=float, default=4.0)
    st.add_argument("--mu2", type=float, default=-3.0)
    st.add_argument("--mu3", type=float, default=1.0)
    st.add_argument("--h", type=float)
    st.add_argument("--eps-lo", type=float, default=0.0)
    st.add_argument("--eps-hi", type=float, default=1.0)
    st.add_argument("--n-modes", type=int, default=720)
    st.add_argument("--n-eps", type=int, default=16)
    st.add_argument("--out", default="out")
    st.set_defaults(func=cmd_stability)

    tb = sub.add_parser("table", help="recompute a reference table")
    tb.add_argument("table_id", type=int, choices=TABLE_IDS)
    tb.add_argument("--rows", type=_float_list,
                    help="restrict to these grid sizes (tables 1-4) or times (table 5)")
    tb.add_argument("--closure", choices=sorted(CLOSURES), default="curvature")
    tb.add_argument("--out")
    tb.set_defaults(func=cmd_table)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "rows", None) is not None and args.table_id != 5:
        args.rows = [int(r) for r in args.rows]
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SolverError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
