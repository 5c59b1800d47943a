"""Benchmark the pure-Python kernels against the compiled extension.

Runs the three hot kernels over every forest of a given weight and reports
wall-clock times plus the speedup factor.  Usage:

    python3 benchmarks/bench_kernels.py [--weight 5] [--repeat 3]

The compiled column is skipped (with a note) when the extension is not
built.
"""

from __future__ import annotations

import argparse
import time

from foresthopf import _kernels_py
from foresthopf.forests import DecorationRegistry, enumerate_forests

try:
    from foresthopf import _speedups
except ImportError:  # pragma: no cover - depends on the build environment
    _speedups = None


def _workload(weight: int) -> list[tuple[bytes, int]]:
    reg = DecorationRegistry(["x"], ["a", "b"])
    out = []
    for f in enumerate_forests(weight, reg):
        out.append((f.key, f.x_mask))
    return out


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_impl(impl, keys: list[tuple[bytes, int]], repeat: int) -> dict[str, float]:
    def run_coproduct() -> None:
        for key, x_mask in keys:
            impl.coproduct_counts(key, x_mask)

    def run_takeuchi() -> None:
        for key, _ in keys:
            impl.takeuchi_counts(key)

    sample = [impl.coproduct_counts(key, xm) for key, xm in keys[:40]]

    def run_graded_mul() -> None:
        for ta in sample:
            for tb in sample:
                impl.graded_mul(ta, tb)

    return {
        "coproduct_counts": _time(run_coproduct, repeat),
        "takeuchi_counts": _time(run_takeuchi, repeat),
        "graded_mul": _time(run_graded_mul, repeat),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--weight", type=int, default=5, help="forest weight to sweep")
    ap.add_argument("--repeat", type=int, default=3, help="repetitions (best-of)")
    args = ap.parse_args()

    keys = _workload(args.weight)
    print(f"workload: {len(keys)} forests of weight {args.weight} over X={{x}}, Ω={{a,b}}")

    pure = bench_impl(_kernels_py, keys, args.repeat)
    if _speedups is None:
        print("compiled extension not built; showing pure-python only")
        for name, t in pure.items():
            print(f"{name:18} pure {t * 1e3:8.1f} ms")
        return

    fast = bench_impl(_speedups, keys, args.repeat)
    print(f"{'kernel':18} {'pure':>10} {'compiled':>10} {'speedup':>8}")
    for name in pure:
        p, c = pure[name], fast[name]
        print(f"{name:18} {p * 1e3:8.1f}ms {c * 1e3:8.1f}ms {p / c:7.1f}x")


if __name__ == "__main__":
    main()
