"""Compare the pure-Python and compiled kernels on the same workloads.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each workload swaps the kernel module used by ``ffdist.exact`` and
``ffdist.ilp.solve`` and reports the best wall time over ``--repeat`` runs.
"""

import argparse
import random
import time
from fractions import Fraction

from ffdist import exact, kernels
from ffdist.diagram import build_ffrc
from ffdist.genome import parse_genomes
from ffdist.ilp import UNWEIGHTED, WEIGHTED, build_ilp, solve_exhaustive
from ffdist.similarity import SimilarityGraph

TOY = ">A\n1 2 3 4 5 |\n>B\n6 -7 -8 -9 10 11 |\n"
TOY_EDGES = {
    ("1", "6"): "0.6", ("1", "7"): "0.1", ("1", "9"): "0.5", ("2", "7"): "0.3",
    ("2", "8"): "0.2", ("3", "7"): "0.3", ("3", "9"): "0.9", ("4", "8"): "0.9",
    ("4", "10"): "0.3", ("5", "10"): "0.7", ("5", "11"): "0.8",
}


def workloads():
    a, b = parse_genomes(TOY)
    g = SimilarityGraph.between(a, b, {k: Fraction(v) for k, v in TOY_EDGES.items()}, threshold=Fraction("0.1"))
    rng = random.Random(5)
    two = parse_genomes(">A\n1 2 3 |\n4 5 6 |\n>B\n7 8 9 |\n10 11 12 |\n")
    dense = {(x, y): Fraction(rng.randint(1, 9), 10) for x in two[0].markers for y in two[1].markers if rng.random() < 0.45}
    g2 = SimilarityGraph.between(*two, dense)
    d = build_ffrc(a, b, g)
    return [
        ("toy ffd_exact (capping sweep)", lambda: exact.ffd_exact(a, b, g)),
        ("toy unwffd_exact (capping sweep)", lambda: exact.unwffd_exact(a, b, g)),
        (f"two-chromosome ffd_exact, {len(g2)} edges", lambda: exact.ffd_exact(*two, g2)),
        ("toy ILP branch and bound, weighted", lambda: solve_exhaustive(build_ilp(d, WEIGHTED))),
        ("toy ILP branch and bound, unweighted", lambda: solve_exhaustive(build_ilp(d, UNWEIGHTED))),
    ]


def timed(fn, repeat):
    best, result = None, None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        t = time.perf_counter() - start
        best = t if best is None or t < best else best
    return best, result


def use(module):
    for name in ("cycle_stats", "cycle_summary", "capping_sweep", "bb_search"):
        setattr(kernels, name, getattr(module, name))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    impls = kernels.implementations()
    if len(impls) < 2:
        print("compiled kernels not built; only the pure-Python timings are shown")
    saved = {n: getattr(kernels, n) for n in ("cycle_stats", "cycle_summary", "capping_sweep", "bb_search")}
    header = f"{'workload':44}" + "".join(f"{m.IMPLEMENTATION:>12}" for m in impls) + ("     speedup" if len(impls) > 1 else "")
    print(header)
    try:
        for label, fn in workloads():
            times, results = [], []
            for module in impls:
                use(module)
                t, r = timed(fn, args.repeat)
                times.append(t)
                results.append(r)
            if any(repr(r) != repr(results[0]) for r in results):
                raise SystemExit(f"kernels disagree on {label}")
            row = f"{label:44}" + "".join(f"{t:11.4f}s" for t in times)
            if len(times) > 1:
                row += f"{times[0] / times[1]:11.1f}x"
            print(row)
    finally:
        for n, f in saved.items():
            setattr(kernels, n, f)


if __name__ == "__main__":
    main()
