"""Command-line interface.

    zmgof analyze FILE          one report row
    zmgof batch DIR             one row per file, sorted by file name
    zmgof simulate              p-values of simulated texts plus a summary
    zmgof kernel --theta T      kernel eigenvalues nu and lambda = 1/nu
    zmgof cdf --theta T --x X   null CDF and upper tail at X

Exit codes: 0 success, 1 input error (or every batch file failed),
2 the shift fit failed (the row is still printed, with blank fit columns).
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .estimation import THETA_CAP, THETA_FLOOR
from .pipeline import REPORT_COLUMNS, AnalysisConfig, TestReport, analyze_text
from .smirnov import cdf_w2
from .spectral import DEFAULT_BASIS, NULL_LAWS, null_spectrum, spectrum
from .text import read_text
from .zm import DEFAULT_M, ZMParams

__all__ = ["main", "build_parser"]

EXIT_OK, EXIT_INPUT, EXIT_FIT = 0, 1, 2


class _InputError(Exception):
    pass


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return "" if math.isnan(v) else f"{v:.10g}"
    return str(v)


def _jsonable(v):
    if isinstance(v, float) and math.isnan(v):
        return None
    if isinstance(v, np.generic):
        return v.item()
    return v


def _write_table(rows: list, columns, fmt: str, out, meta: dict | None = None) -> None:
    if fmt == "json":
        doc = [{c: _jsonable(r[c]) for c in columns} for r in rows]
        if meta is not None:
            doc = {"meta": {k: _jsonable(v) for k, v in meta.items()}, "rows": doc}
        json.dump(doc, out, indent=1)
        out.write("\n")
        return
    if meta:
        for k, v in meta.items():
            out.write(f"# {k}\t{_fmt(v)}\n")
    out.write("\t".join(columns) + "\n")
    for r in rows:
        out.write("\t".join(_fmt(r[c]).replace("\t", " ") for c in columns) + "\n")


def _config(args) -> AnalysisConfig:
    return AnalysisConfig(mode=args.mode, keep_hyphens=args.keep_hyphens,
                          theta_cap=args.theta_cap, theta_floor=args.theta_floor,
                          m_trunc=args.m_trunc, basis_size=args.basis_size,
                          half_index=args.half_index, null_law=args.null_law)


def _analyze_file(path, config: AnalysisConfig, keep_bridge=False) -> TestReport:
    try:
        raw = read_text(path)
    except (OSError, UnicodeDecodeError) as exc:
        raise _InputError(f"{path}: cannot read: {exc}") from exc
    try:
        return analyze_text(raw, config, Path(str(path)).name, keep_bridge=keep_bridge)
    except ValueError as exc:
        raise _InputError(f"{path}: {exc}") from exc


def _emit_bridge(report: TestReport, path) -> None:
    values = report.bridge
    t = np.arange(len(values)) / (len(values) - 1)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "z"])
        w.writerows(zip(t.tolist(), values.tolist()))


def cmd_analyze(args, out) -> int:
    config = _config(args)
    report = _analyze_file(args.file, config, keep_bridge=args.emit_path is not None)
    if args.emit_path is not None and report.bridge is not None:
        _emit_bridge(report, args.emit_path)
    _write_table([report.as_dict()], REPORT_COLUMNS, args.format, out)
    return EXIT_OK if report.ok else EXIT_FIT


def cmd_batch(args, out) -> int:
    folder = Path(args.dir)
    if not folder.is_dir():
        raise _InputError(f"{folder}: not a directory")
    files = sorted(p for p in folder.iterdir() if p.is_file() and not p.name.startswith("."))
    if not files:
        raise _InputError(f"{folder}: no input files")
    config = _config(args)

    def one(path):
        try:
            return _analyze_file(path, config).as_dict()
        except _InputError as exc:
            row = {c: math.nan for c in REPORT_COLUMNS}
            row.update(source_id=path.name, n=0, R_n=0, theta_clamped=False,
                       status=f"error: {str(exc).split(': ', 1)[-1]}")
            return row

    with ThreadPoolExecutor(max(1, args.workers)) as pool:
        rows = list(pool.map(one, files))  # map keeps file order
    _write_table(rows, REPORT_COLUMNS, args.format, out)
    failed = sum(1 for r in rows if r["status"] != "ok")
    if failed:
        print(f"{failed} of {len(rows)} files did not produce a p-value", file=sys.stderr)
    return EXIT_INPUT if failed == len(rows) else EXIT_OK


_SIM_COLUMNS = ("rep", "n", "R_n", "theta_hat", "q_hat", "omega2", "p_value", "status")


def cmd_simulate(args, out) -> int:
    from scipy.stats import kstest

    from .simulate import (RNG_ALGORITHM, SimConfig, alternative_pvalue_experiment,
                           null_pvalue_experiment, pvalue_array)

    if not 0.0 < args.theta < 1.0:
        raise _InputError("--theta must lie in (0, 1)")
    try:
        cfg = SimConfig(ZMParams.from_theta_q(args.theta, args.q), args.n, args.reps, args.seed)
    except ValueError as exc:
        raise _InputError(str(exc)) from exc
    config = _config(args)
    if args.alternative == "null":
        reports = null_pvalue_experiment(cfg, config, workers=args.workers)
    else:
        reports = alternative_pvalue_experiment(cfg, args.alternative, config,
                                                workers=args.workers)
    rows = []
    for rep, r in enumerate(reports):
        d = r.as_dict()
        d["rep"] = rep
        rows.append(d)
    p = np.array([r.p_value for r in reports])
    p = p[~np.isnan(p)]
    meta = {
        "rng": RNG_ALGORITHM, "seed": args.seed, "theta": args.theta, "q": args.q,
        "n": args.n, "reps": args.reps, "alternative": args.alternative,
        "null_law": args.null_law, "failed_fits": int(args.reps - len(p)),
        "median_p": float(np.median(p)) if len(p) else math.nan,
        "median_p_failed_fits_rejected": float(np.median(pvalue_array(reports, 0.0))),
        "mean_p": float(np.mean(p)) if len(p) else math.nan,
        "ks_uniform_p": float(kstest(p, "uniform").pvalue) if len(p) > 1 else math.nan,
    }
    _write_table(rows, _SIM_COLUMNS, args.format, out, meta)
    return EXIT_OK


def _theta(args):
    if not 0.0 < args.theta < 1.0:
        raise _InputError("--theta must lie in (0, 1)")
    return args.theta


def cmd_kernel(args, out) -> int:
    spec = spectrum(_theta(args), args.basis_size)
    rows = [{"k": k + 1, "nu": float(nu), "lambda": (1.0 / nu if nu > 1e-8 else math.nan)}
            for k, nu in enumerate(spec.nu)]
    if args.emit_path is not None:
        with open(args.emit_path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["nu", "lambda"])
            w.writerows((r["nu"], _fmt(r["lambda"])) for r in rows)
    _write_table(rows, ("k", "nu", "lambda"), args.format, out)
    return EXIT_OK


def cmd_cdf(args, out) -> int:
    spec = null_spectrum(_theta(args), args.basis_size, law=args.null_law, rho=args.rho)
    rows = []
    for x in args.x:
        if x < 0:
            raise _InputError("--x must be non-negative")
        F = cdf_w2(spec, x) if x > 0 else 0.0
        rows.append({"x": x, "cdf": F, "p_value": 1.0 - F})
    _write_table(rows, ("x", "cdf", "p_value"), args.format, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("analysis options")
    g.add_argument("--mode", choices=("words", "han_chars"), default="words")
    g.add_argument("--keep-hyphens", action="store_true",
                   help="keep intra-word hyphens (well-known stays one word)")
    g.add_argument("--theta-cap", type=float, default=THETA_CAP)
    g.add_argument("--theta-floor", type=float, default=THETA_FLOOR)
    g.add_argument("--m-trunc", type=int, default=DEFAULT_M)
    g.add_argument("--basis-size", type=int, default=DEFAULT_BASIS)
    g.add_argument("--half-index", choices=("floor", "interpolated"), default="floor",
                   help="R at floor(n/2) or R interpolated at (n+1)/2 in theta_hat")
    g.add_argument("--null-law", choices=NULL_LAWS, default=AnalysisConfig.null_law)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--format", choices=("tsv", "json"), default="tsv")
    g.add_argument("--emit-path", default=None,
                   help="also write a CSV (bridge path for analyze, spectrum for kernel)")
    g.add_argument("--workers", type=int, default=1)

    parser = argparse.ArgumentParser(
        prog="zmgof", description="Zipf-Mandelbrot goodness-of-fit test on word counts.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="test one text file")
    p.add_argument("file", help="UTF-8 text file, or - for stdin")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("batch", parents=[common], help="test every file in a directory")
    p.add_argument("dir")
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("simulate", parents=[common], help="p-values of simulated texts")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--q", type=float, default=0.0)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--reps", type=int, default=100)
    p.add_argument("--alternative", choices=("null", "duplicated", "disjoint"), default="null")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("kernel", parents=[common], help="kernel eigenvalues")
    p.add_argument("--theta", type=float, required=True)
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("cdf", parents=[common], help="null CDF of omega^2")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--x", type=float, nargs="+", required=True)
    p.add_argument("--rho", type=float, default=0.0,
                   help="theta^2 R_n / n for the finite_sample law (0 gives the limit)")
    p.set_defaults(func=cmd_cdf)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except _InputError as exc:
        print(f"zmgof: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
