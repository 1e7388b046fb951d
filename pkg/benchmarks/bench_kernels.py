"""Compare the numba kernels with their numpy fallbacks.

Usage:
    python3 benchmarks/bench_kernels.py [--repeat N]

For each kernel the script checks that both backends agree, then prints
the best wall time of N repeats (the numba timings exclude the first,
compiling call) and the speed-up factor.
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

from tomolab import _accel
from tomolab.states import DEFAULT_GRID


def best_time(fn, repeat):
    fn()  # warm-up (triggers numba compilation)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    x = DEFAULT_GRID.points
    wq = DEFAULT_GRID.weights
    rng = np.random.default_rng(0)
    a = (rng.normal(size=x.size) + 1j * rng.normal(size=x.size)) * wq
    w = np.exp(-x * x) / math.sqrt(math.pi)
    return {
        "hermite_table (n<=64, 1024 pts)": lambda b: b["hermite_table"](64, x),
        "chirp_sum (1024 x 1024)": lambda b: b["chirp_sum"](a, x, x, 1.3),
        "neg_xlogx_sum (1024 pts)": lambda b: b["neg_xlogx_sum"](w, wq),
        "power_sum (1024 pts, alpha=2/3)": lambda b: b["power_sum"](w, 2.0 / 3.0, wq),
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=20)
    args = parser.parse_args(argv)
    if not _accel.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")
    backends = {name: _accel._BACKENDS[name] for name in ("numpy", "numba")}
    print(f"{'kernel':36s} {'numpy [ms]':>11s} {'numba [ms]':>11s} {'speed-up':>9s} {'max diff':>9s}")
    for label, call in cases().items():
        ref = np.asarray(call(backends["numpy"]))
        got = np.asarray(call(backends["numba"]))
        diff = float(np.max(np.abs(ref - got)))
        t_np = best_time(lambda: call(backends["numpy"]), args.repeat)
        t_nb = best_time(lambda: call(backends["numba"]), args.repeat)
        print(f"{label:36s} {1e3 * t_np:11.3f} {1e3 * t_nb:11.3f} {t_np / t_nb:9.2f} {diff:9.1e}")


if __name__ == "__main__":
    main()
