"""Time the numba and numpy kernels on the same batch of frames.

    python3 benchmarks/bench_backends.py [--sizes 1000 10000 100000] [--repeat 5]

Derivative evaluation is done once up front, so only the per-point
frame / Weingarten / eigenvalue work is timed.
"""
import argparse
from timeit import default_timer as timer

import numpy as np

from hypershape import surfaces
from hypershape._accel import HAVE_NUMBA
from hypershape.geometry import evaluate_derivatives
from hypershape.kernels import analyze_numba, analyze_numpy


def best_of(fn, args, repeat):
    times = []
    for _ in range(repeat):
        t0 = timer()
        fn(*args)
        times.append(timer() - t0)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--surface", default="ellipsoid")
    ap.add_argument("--sizes", type=int, nargs="+", default=[1_000, 10_000, 100_000])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    s = surfaces.get(args.surface)
    lo, hi = np.array(s.domain).T
    rng = np.random.default_rng(0)

    if HAVE_NUMBA:
        t0 = timer()
        _, f, d = evaluate_derivatives(s, rng.uniform(lo, hi, size=(4, 3)))
        analyze_numba(f, d, 1e-12)
        print(f"numba warm-up (compile or cache load): {timer() - t0:.2f} s")
    else:
        print("numba not installed; the loop kernel runs as plain Python")

    print(f"{'points':>8} {'numpy [s]':>10} {'numba [s]':>10} {'speed-up':>9} {'max |dk|':>9}")
    for n in args.sizes:
        _, first, second = evaluate_derivatives(s, rng.uniform(lo, hi, size=(n, 3)))
        t_np = best_of(analyze_numpy, (first, second, 1e-12), args.repeat)
        t_nb = best_of(analyze_numba, (first, second, 1e-12), args.repeat)
        dk = np.max(np.abs(analyze_numpy(first, second, 1e-12)[10] - analyze_numba(first, second, 1e-12)[10]))
        print(f"{n:>8} {t_np:>10.4f} {t_nb:>10.4f} {t_np / t_nb:>8.1f}x {dk:>9.1e}")


if __name__ == "__main__":
    main()
