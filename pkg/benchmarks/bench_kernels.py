"""Compare the compiled and numpy kernel backends.

Times ``kernel_value_grad`` on a grid of (N, t) and a full BB run on the
t=9, N=121 instance under each backend, and reports the largest discrepancy
between backends.

    python benchmarks/bench_kernels.py [--repeat 5] [--full]
"""
import argparse
import os
import subprocess
import sys
import time

import numpy as np

from sphdesign.geometry import random_points
from sphdesign.kernels import available_backends, get_backend

GRID = [(121, 9), (400, 18), (1000, 30), (2601, 49)]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def kernel_table(repeat, grid):
    backends = available_backends()
    print(f"{'N':>6} {'t':>4} " + " ".join(f"{b + ' [s]':>14}" for b in backends) + f" {'speedup':>8} {'max |dA|':>10} {'max |dG|':>10}")
    for n, t in grid:
        pts = random_points(n, seed=n)
        times, outs = [], []
        for name in backends:
            mod = get_backend(name)
            times.append(best_of(lambda: mod.kernel_value_grad(pts, t), repeat))
            outs.append(mod.kernel_value_grad(pts, t))
        da = abs(outs[0][0] - outs[-1][0])
        dg = float(np.abs(outs[0][1] - outs[-1][1]).max())
        speed = times[-1] / times[0] if len(times) > 1 else 1.0
        print(f"{n:>6} {t:>4} " + " ".join(f"{x:>14.5f}" for x in times) + f" {speed:>8.1f} {da:>10.2e} {dg:>10.2e}")


def full_runs():
    # backend is chosen at import, so each run gets its own interpreter
    code = (
        "from sphdesign import *;from sphdesign.kernels import BACKEND;import time;"
        "a=to_angles(gauge_fix(spiral_points(121)));t0=time.perf_counter();"
        "r=bb_minimize(a,9);print(BACKEND,r.iterations,'%.3e'%r.final_f,'%.3f'%(time.perf_counter()-t0))"
    )
    print("\nfull BB run, t=9, N=121 (backend, iterations, A, seconds)")
    for name in available_backends():
        env = {**os.environ, "SPHDESIGN_BACKEND": name}
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
        print("  " + (out.stdout.strip() or out.stderr.strip()))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--full", action="store_true", help="include the N=2601 row")
    args = ap.parse_args()
    kernel_table(args.repeat, GRID if args.full else GRID[:-1])
    full_runs()


if __name__ == "__main__":
    main()
