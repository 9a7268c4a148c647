"""Command-line interface: ``design``, ``verify`` and ``compare``.

Machine-readable output goes to stdout; diagnostics go to stderr.
Exit codes: 0 certified design, 2 ran but not certified, 1 error.
"""
from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from .errors import DegenerateGauge, LineSearchStall, NormError, PointFileError
from .geometry import gauge_fix, random_points, read_points, spiral_points, to_angles, write_points
from .optimizer import BBConfig, bb_minimize, qn_minimize, trace_to_json
from .verifier import STAT_TOL, verify_design

CSV_HEADER = ["t_plus_1", "n", "method", "iterations", "a_value", "grad_inf", "time_s", "sigma_min"]
METHODS = {"bb": bb_minimize, "qn": qn_minimize}

EXIT_OK, EXIT_ERROR, EXIT_UNCERTIFIED = 0, 1, 2


def _err(msg):
    print(f"sphdesign: {msg}", file=sys.stderr)


def _add_config_flags(p):
    d = BBConfig()
    p.add_argument("--max-iter", type=int, default=d.k_max, help="iteration cap (default %(default)s)")
    p.add_argument("--eps1", type=float, default=d.eps1, help="gradient-change tolerance")
    p.add_argument("--eps2", type=float, default=d.eps2, help="function/parameter-change tolerance")
    p.add_argument("--rho", type=float, default=d.rho, help="Armijo-Goldstein parameter in (0, 1/2)")
    p.add_argument("--tau", type=float, default=d.tau, help="backtracking factor in (0, 1)")
    p.add_argument("--grad-tol", type=float, default=d.grad_tol, help="stationarity tolerance on ||g||_2")


def _config(args):
    return BBConfig(
        k_max=args.max_iter, eps1=args.eps1, eps2=args.eps2,
        rho=args.rho, tau=args.tau, grad_tol=args.grad_tol,
    )


def _initial_points(init, n, seed, path=None):
    if init == "spiral":
        return spiral_points(n)
    if init == "random":
        return random_points(n, seed)
    if path is None:
        raise ValueError("--init file requires --in")
    pts = read_points(path)
    if n is not None and pts.shape[0] != n:
        raise ValueError(f"{path} holds {pts.shape[0]} points but --n is {n}")
    return pts


def run_design(t, n, init="spiral", seed=0, method="bb", cfg=None, in_path=None):
    """Initialize, gauge-fix, optimize and certify; returns ``(result, certificate)``."""
    pts = _initial_points(init, n, seed, in_path)
    start = to_angles(gauge_fix(pts))
    result = METHODS[method](start, t, cfg)
    return result, verify_design(result.final_points, t)


def bench_row(t, n, method, result, cert):
    return [
        t + 1, n, method, result.iterations,
        "%.6e" % cert.a_value, "%.4e" % cert.grad_inf_norm,
        "%.6f" % result.wall_time, "%.6g" % cert.sigma_min,
    ]


def cmd_design(args) -> int:
    if args.t < 1:
        _err("--t must be at least 1")
        return EXIT_ERROR
    n = args.n
    if n is None and args.init != "file":
        n = (args.t + 2) ** 2
    if n is not None and n < 2:
        _err("--n must be at least 2")
        return EXIT_ERROR
    try:
        cfg = _config(args)
        result, cert = run_design(args.t, n, args.init, args.seed, args.method, cfg, args.inp)
    except (OSError, ValueError, DegenerateGauge, LineSearchStall) as exc:
        _err(str(exc))
        return EXIT_ERROR
    n = result.final_points.shape[0]
    out = args.out or f"design_t{args.t}_n{n}.txt"
    try:
        write_points(out, result.final_points)
        if args.trace:
            Path(args.trace).write_text(trace_to_json(result.trace))
        if args.cert:
            Path(args.cert).write_text(cert.to_json())
    except OSError as exc:
        _err(str(exc))
        return EXIT_ERROR
    _err(f"{result.method}: {result.termination} after {result.iterations} iterations; "
         f"verdict {cert.verdict}; points written to {out}")
    print(",".join(str(v) for v in bench_row(args.t, n, args.method, result, cert)))
    return EXIT_OK if cert.verdict == "certified_design" else EXIT_UNCERTIFIED


def cmd_verify(args) -> int:
    path = args.points or args.inp
    if path is None:
        _err("no point file given")
        return EXIT_ERROR
    try:
        pts = read_points(path)
        cert = verify_design(pts, args.t, stat_tol=args.stat_tol, rank_tol=args.rank_tol)
    except PointFileError as exc:
        _err(f"{path}: {exc}")
        return EXIT_ERROR
    except (OSError, ValueError, DegenerateGauge, NormError) as exc:
        _err(str(exc))
        return EXIT_ERROR
    sys.stdout.write(cert.to_json())
    return EXIT_OK if cert.verdict == "certified_design" else EXIT_UNCERTIFIED


def cmd_compare(args) -> int:
    pairs = [(int(t), int(n)) for t, n in (args.pair or [])]
    cfg = _config(args)
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    failed = 0
    try:
        writer = csv.writer(out)
        writer.writerow(CSV_HEADER)
        for t, n in pairs:
            for method in ("bb", "qn"):
                try:
                    result, cert = run_design(t, n, args.init, args.seed, method, cfg)
                    writer.writerow(bench_row(t, n, method, result, cert))
                except Exception as exc:  # keep going; the row records the failure
                    failed += 1
                    _err(f"t={t} n={n} {method}: {exc}")
                    writer.writerow([t + 1, n, method, "", "", "", "", ""])
                out.flush()
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK if failed == 0 else EXIT_ERROR


def build_parser():
    parser = argparse.ArgumentParser(prog="sphdesign", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("design", help="compute a numerical spherical t-design")
    p.add_argument("--t", type=int, required=True, help="design degree")
    p.add_argument("--n", type=int, default=None, help="number of points (default (t+2)^2)")
    p.add_argument("--init", choices=["spiral", "random", "file"], default="spiral")
    p.add_argument("--seed", type=int, default=0, help="seed for --init random")
    p.add_argument("--in", dest="inp", default=None, help="initial point file for --init file")
    p.add_argument("--out", default=None, help="final point file (default design_t<T>_n<N>.txt)")
    p.add_argument("--trace", default=None, help="write iteration trace JSON here")
    p.add_argument("--cert", default=None, help="write certificate JSON here")
    p.add_argument("--method", choices=sorted(METHODS), default="bb")
    _add_config_flags(p)
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("verify", help="certify a point file as a spherical t-design")
    p.add_argument("points", nargs="?", default=None, help="point file")
    p.add_argument("--in", dest="inp", default=None, help="point file (alternative to the positional)")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--stat-tol", type=float, default=STAT_TOL)
    p.add_argument("--rank-tol", type=float, default=None, help="absolute rank tolerance (default 1e-8 * sigma_max)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("compare", help="run BB and quasi-Newton on (t, n) pairs, emit CSV")
    p.add_argument("--pair", nargs=2, action="append", metavar=("T", "N"), type=int)
    p.add_argument("--init", choices=["spiral", "random"], default="spiral")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="CSV path (default stdout)")
    _add_config_flags(p)
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
