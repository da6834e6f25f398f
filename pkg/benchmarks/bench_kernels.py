"""Timing comparison: compiled kernels vs the pure-Python reference.

Runs the same deterministic workloads through both kernel implementations
and prints a small table with the speedup.  Usage:

    python3 benchmarks/bench_kernels.py

The compiled extension is optional; if it is missing, only the pure
numbers are reported.
"""

from __future__ import annotations

import random
import time

from latdisc.kernels import _pure

try:
    from latdisc.kernels import _speedups
except ImportError:
    _speedups = None


def _gauss_workload(rng: random.Random):
    cases = []
    for _ in range(2000):
        while True:
            rows = [[rng.randint(-500, 500) for _ in range(2)] for _ in range(2)]
            if rows[0][0] * rows[1][1] != rows[0][1] * rows[1][0]:
                break
        cases.append(rows)
    return "gauss_reduce_2d", lambda mod: [mod.gauss_reduce_2d(c) for c in cases]


def _lll_workload(rng: random.Random):
    cases = []
    for _ in range(200):
        n = rng.randint(101, 499)
        d = rng.randint(3, 5)
        g = [1] + [rng.randint(1, n - 1) for _ in range(d - 1)]
        rows = [[n] + [0] * (d - 1)]
        for i in range(1, d):
            row = [0] * d
            row[0] = -g[i]
            row[i] = 1
            rows.append(row)
        cases.append(rows)
    return "lll_reduce", lambda mod: [mod.lll_reduce(c) for c in cases]


def _rank1_workload(rng: random.Random):
    cases = []
    for _ in range(60):
        n = rng.randint(101, 300)
        g = [1, rng.randint(1, n - 1), rng.randint(1, n - 1)]
        cases.append((n, g, 12))
    return "rank1_dual_min_in_box", lambda mod: [
        mod.rank1_dual_min_in_box(n, g, w) for n, g, w in cases
    ]


def _coeff_box_workload(rng: random.Random):
    cases = []
    for _ in range(40):
        rows = _pure.lll_reduce(
            [[rng.randint(-40, 40) for _ in range(4)] for _ in range(4)]
        )
        cases.append((rows, [4, 4, 4, 4]))
    return "min_norm_in_coeff_box", lambda mod: [
        mod.min_norm_in_coeff_box(rows, widths) for rows, widths in cases
    ]


def _time(fn) -> float:
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


def main() -> None:
    rng = random.Random(12345)
    workloads = [
        _gauss_workload(rng),
        _lll_workload(rng),
        _rank1_workload(rng),
        _coeff_box_workload(rng),
    ]
    print(f"{'workload':<26} {'pure [s]':>10} {'compiled [s]':>13} {'speedup':>8}")
    for name, run in workloads:
        if _speedups is not None and run(_speedups) != run(_pure):
            raise AssertionError(f"kernel outputs differ on {name}")
        pure_t = min(_time(lambda: run(_pure)) for _ in range(3))
        if _speedups is None:
            print(f"{name:<26} {pure_t:>10.4f} {'n/a':>13} {'n/a':>8}")
            continue
        comp_t = min(_time(lambda: run(_speedups)) for _ in range(3))
        print(f"{name:<26} {pure_t:>10.4f} {comp_t:>13.4f} {pure_t / comp_t:>7.1f}x")


if __name__ == "__main__":
    main()
