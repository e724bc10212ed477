"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3]

Prints one row per (workload, kernel) with the best wall time of each
implementation and the speed-up.  Results are checked for equality first.
"""

import argparse
import random
import time
from array import array

from blz import kernels
from blz.reduction import Graph, ReductionParams, build_reduction
from blz.squarefree import thue_word


def workloads():
    rng = random.Random(7)
    pairs = [(u, v) for u in range(1, 11) for v in range(u + 1, 11)]
    g = Graph(10, tuple(sorted(rng.sample(pairs, 20))))
    yield "thue 6561", array("q", thue_word(6561))
    yield "thue 19683", array("q", thue_word(19683))
    yield "reduction n=10 m=20 c=2", array("q", build_reduction(g, ReductionParams(2, 10)).text)
    yield "random binary 20000", array("q", (rng.randrange(2) for _ in range(20000)))


def tasks(buf):
    return {
        "greedy_lz76": lambda impl: impl.greedy_lz76(buf),
        "greedy_blz c=1": lambda impl: impl.greedy_blz(buf, 1),
        "greedy_blz c=3": lambda impl: impl.greedy_blz(buf, 3),
        "has_square": lambda impl: impl.has_square(buf),
    }


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--max-python-seconds", type=float, default=60.0,
                    help="skip the fallback on a workload once one call exceeds this")
    args = ap.parse_args()
    impls = kernels.implementations()
    if "cython" not in impls:
        print("compiled extension not built; only the fallback is available")
    print(f"{'workload':28} {'kernel':16} {'cython s':>10} {'python s':>10} {'speed-up':>9}")
    for name, buf in workloads():
        for task, fn in tasks(buf).items():
            cy_t = py_t = None
            if "cython" in impls:
                cy_t, cy_out = best_of(lambda: fn(impls["cython"]), args.repeat)
            py_t, py_out = best_of(lambda: fn(impls["python"]), 1)
            if py_t <= args.max_python_seconds and args.repeat > 1:
                py_t = min(py_t, best_of(lambda: fn(impls["python"]), args.repeat - 1)[0])
            if cy_t is not None and cy_out != py_out:
                raise SystemExit(f"{name} {task}: implementations disagree")
            ratio = f"{py_t / cy_t:8.1f}x" if cy_t else "-"
            cy_s = f"{cy_t:10.4f}" if cy_t is not None else f"{'-':>10}"
            print(f"{name:28} {task:16} {cy_s} {py_t:10.4f} {ratio:>9}")


if __name__ == "__main__":
    main()
