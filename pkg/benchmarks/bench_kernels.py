#!/usr/bin/env python3
"""Compare the compiled reduction kernel against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--full] [--repeat N]

Each case runs the complete pipeline (graph ideal, Buchberger, reduction,
elimination) under both kernels and reports wall times plus the speedup.
The results are asserted identical across kernels before timing is trusted.
"""

import argparse
import sys
import time

from matoric import _kernel, toric_gb, uniform
from matoric.catalog import table1_entry


def cases(full: bool):
    yield "U_{2,4}", uniform(2, 4), None
    yield "U_{2,5}", uniform(2, 5), None
    yield "U_{3,6}", uniform(3, 6), None
    e = table1_entry("M_18")
    yield "M_18", e.matroid, e.embedded_order
    if full:
        for mid in ("M_6", "M_7", "M_9", "M_11"):
            e = table1_entry(mid)
            yield mid, e.matroid, e.embedded_order


def run_case(m, order, kernel_name, repeat):
    best = float("inf")
    elements = None
    for _ in range(repeat):
        with _kernel.use_kernel(kernel_name):
            t0 = time.perf_counter()
            gb = toric_gb(m, order)
            best = min(best, time.perf_counter() - t0)
            elements = gb.elements
    return best, elements


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--full", action="store_true", help="include the larger cases")
    ap.add_argument("--repeat", type=int, default=1, help="take the best of N runs")
    args = ap.parse_args(argv)

    names = sorted(_kernel.available())
    if "c" not in names:
        print("note: compiled kernel not built; timing the fallback only")

    header = f"{'case':<10} {'gb':>5} " + " ".join(f"{n:>10}" for n in names)
    if len(names) == 2:
        header += f" {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for label, m, order in cases(args.full):
        times = {}
        results = {}
        for name in names:
            times[name], results[name] = run_case(m, order, name, args.repeat)
        if len(names) == 2 and results["c"] != results["python"]:
            print(f"{label}: KERNEL MISMATCH", file=sys.stderr)
            return 1
        gb_size = len(next(iter(results.values())))
        row = f"{label:<10} {gb_size:>5} " + " ".join(
            f"{times[n]:>9.3f}s" for n in names
        )
        if len(names) == 2:
            row += f" {times['python'] / times['c']:>7.1f}x"
        print(row)
    return 0


if __name__ == "__main__":
    sys.exit(main())
