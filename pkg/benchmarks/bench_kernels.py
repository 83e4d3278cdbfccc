"""Time the compiled kernels against the pure-Python fallback.

Run with ``python benchmarks/bench_kernels.py``.
"""

import argparse
import time

from irredbound import _kernels_py

try:
    from irredbound import _kernels
except ImportError:
    _kernels = None

CASES = [
    ("count_points_odd q=100003", "count_points_odd", (0, 2 * 7, 4 * 11, 100003)),
    ("count_points_odd q=1000003", "count_points_odd", (0, 2 * 7, 4 * 11, 1000003)),
    ("count_points_full q=997", "count_points_full", (0, 996, 1, 987, 977, 997)),
    ("count_reduced_forms D=-10^6-3", "count_reduced_forms", (-(10**6) - 3,)),
    ("count_reduced_forms D=-4*10^7-4", "count_reduced_forms", (-4 * 10**7 - 4 * 3,)),
]


def best_of(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if _kernels is None:
        print("compiled extension not built; only the Python timings are shown")
    print(f"{'case':36} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for label, name, cargs in CASES:
        tp, rp = best_of(getattr(_kernels_py, name), cargs, args.repeat)
        if _kernels is None:
            print(f"{label:36} {tp:10.4f} {'-':>10} {'-':>8}")
            continue
        tc, rc = best_of(getattr(_kernels, name), cargs, args.repeat)
        assert rp == rc, (label, rp, rc)
        print(f"{label:36} {tp:10.4f} {tc:10.4f} {tp / tc:8.1f}")


if __name__ == "__main__":
    main()
