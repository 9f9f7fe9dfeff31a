"""Compare the numba kernels with the numpy fallbacks.

A "miss" residue case scans all of (Z/m)^n on both paths; on a "hit" the
numba loop returns at the first solution while numpy finishes its chunk.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import time

import numpy as np

from fanok3 import _kernels

CASES = [
    ("box L_2-6, B=200", "box", [[2, 4], [4, 2]], 2, 200),
    ("box L_3-1, B=25", "box", [[0, 2, 2], [2, 0, 2], [2, 2, 0]], 0, 25),
    ("box rank 4, B=9", "box", [[2, 1, 0, 0], [1, -2, 1, 0], [0, 1, 4, 1], [0, 0, 1, -2]], 4, 9),
    ("residue L_3-1 mod 64 (miss)", "res", [[0, 2, 2], [2, 0, 2], [2, 2, 0]], 7, 64),
    ("residue rank 4 mod 24 (hit)", "res", [[2, 1, 0, 0], [1, -2, 1, 0], [0, 1, 4, 1], [0, 0, 1, -2]], 5, 24),
]


def best(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        print("numba not importable; only the numpy path is available")
    print(f"{'case':32s} {'numpy [ms]':>11s} {'numba [ms]':>11s} {'speedup':>8s}")
    for name, kind, gram, target, param in CASES:
        g = np.asarray(gram, dtype=np.int64)
        if kind == "box":
            slow = lambda: _kernels._box_solutions_numpy(g, target, param)  # noqa: E731
            fast = lambda: _kernels._box_solutions_jit(g, target, param)  # noqa: E731
        else:
            h = _kernels._half_gram(gram)
            slow = lambda: _kernels._residue_hit_numpy(h, target % param, param)  # noqa: E731
            fast = lambda: _kernels._residue_hit_jit(h, np.int64(target % param), np.int64(param))  # noqa: E731
        t_slow, out_slow = best(slow, args.repeat)
        if _kernels.HAVE_NUMBA:
            fast()  # compile outside the timing
            t_fast, out_fast = best(fast, args.repeat)
            assert np.array_equal(np.asarray(out_slow), np.asarray(out_fast)), name
            print(f"{name:32s} {1e3 * t_slow:11.2f} {1e3 * t_fast:11.2f} {t_slow / t_fast:7.1f}x")
        else:
            print(f"{name:32s} {1e3 * t_slow:11.2f} {'-':>11s} {'-':>8s}")


if __name__ == "__main__":
    main()
