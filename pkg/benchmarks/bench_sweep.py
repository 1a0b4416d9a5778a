"""Time the compiled sweep kernel against the pure-Python one.

    python3 benchmarks/bench_sweep.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

from skeinz import kernels
from skeinz.diagram import braid_closure, builtin, colored_diagram
from skeinz.oracle import bracket, projector_numerators

CASES = [
    ("braid 5-strand, 16 crossings", lambda: braid_closure([1, -2, 3, -4, 2, 1, -3, 4] * 2)),
    ("trefoil colour 3", lambda: colored_diagram(builtin("trefoil").diagram, 3)),
    ("trefoil colour 5", lambda: colored_diagram(builtin("trefoil").diagram, 5)),
    ("fig8 colour 4", lambda: colored_diagram(builtin("fig8").diagram, 4)),
]


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if kernels.compiled_kernel is None:
        print("compiled kernel not available; build with `pip install -e . --no-build-isolation`")
    for n in range(1, 6):
        projector_numerators(n)  # warm the projector tables outside the timings
    print(f"{'case':32s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for name, make in CASES:
        d = make()
        tp = best_of(lambda: bracket(d, kernel=kernels.python_kernel), args.repeat)
        if kernels.compiled_kernel is not None:
            tc = best_of(lambda: bracket(d, kernel=kernels.compiled_kernel), args.repeat)
            assert bracket(d, kernel=kernels.compiled_kernel) == bracket(d, kernel=kernels.python_kernel)
            print(f"{name:32s} {tp:10.3f} {tc:10.3f} {tp / tc:8.2f}")
        else:
            print(f"{name:32s} {tp:10.3f} {'-':>10s} {'-':>8s}")


if __name__ == "__main__":
    main()
