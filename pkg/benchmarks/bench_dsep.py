"""Compare the compiled and pure-Python separation kernels.

The hot loop of the whole package is d-separation inside subset
enumeration (minimal-set search runs thousands of queries per graph),
so the benchmark measures exactly that workload plus raw single queries.

Run:  python3 benchmarks/bench_dsep.py [--repeat N]
"""

from __future__ import annotations

import argparse
import itertools
import time

import numpy as np

from ptgraph import fixtures
from ptgraph.adjustment import minimal_sufficient_sets
from ptgraph.completion import enumerate_completions
from ptgraph.dsep import available_kernels, d_separated
from ptgraph.dsl import parse
from ptgraph.graph import CausalGraph, Node, directed
from ptgraph.swig import build_swig


def random_dag(rng, n, p=0.35):
    names = [f"X{i}" for i in range(n)]
    edges = [
        directed(names[i], names[j])
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < p
    ]
    return CausalGraph([Node(name) for name in names], edges)


def bench_raw_queries(kernel, repeat):
    """Every pair and conditioning subset on random 10-node graphs."""
    rng = np.random.default_rng(0)
    graphs = [random_dag(rng, 10) for _ in range(10)]
    queries = 0
    start = time.perf_counter()
    for _ in range(repeat):
        for g in graphs:
            names = g.node_names
            for x, y in itertools.combinations(names[:6], 2):
                rest = [n for n in names if n not in (x, y)]
                for r in range(0, len(rest) + 1, 2):
                    z = rest[:r]
                    d_separated(g, x, y, z, kernel=kernel)
                    queries += 1
    return time.perf_counter() - start, queries


def bench_minset_workload(kernel, repeat):
    """Full minimal-set enumeration over every completion of the worked
    Appendix-style fixture: the realistic end-to-end hot path."""
    import ptgraph.dsep as dsep_mod

    g = parse(fixtures.load("fig3"))
    saved = dsep_mod.DEFAULT_KERNEL
    dsep_mod.DEFAULT_KERNEL = kernel
    try:
        start = time.perf_counter()
        for _ in range(repeat):
            for _, completed in enumerate_completions(g):
                s = build_swig(completed)
                minimal_sufficient_sets(s, 0)
                minimal_sufficient_sets(s, 1)
        return time.perf_counter() - start
    finally:
        dsep_mod.DEFAULT_KERNEL = saved


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    kernels = available_kernels()
    print(f"kernels available: {', '.join(kernels)}")
    if "cython" not in kernels:
        print("compiled kernel not built; benchmarking python only")

    rows = []
    for kernel in kernels:
        raw_t, queries = bench_raw_queries(kernel, args.repeat)
        work_t = bench_minset_workload(kernel, args.repeat)
        rows.append((kernel, raw_t, queries, work_t))

    print(f"\n{'kernel':<8} {'raw queries':>12} {'raw time':>10} "
          f"{'us/query':>9} {'minset workload':>16}")
    for kernel, raw_t, queries, work_t in rows:
        print(f"{kernel:<8} {queries:>12} {raw_t:>9.3f}s "
              f"{raw_t / queries * 1e6:>8.1f} {work_t:>15.3f}s")
    if len(rows) == 2:
        timings = {kernel: (raw_t, work_t) for kernel, raw_t, _, work_t in rows}
        cy_raw, cy_work = timings["cython"]
        py_raw, py_work = timings["python"]
        print(f"\nspeedup (python/cython): raw {py_raw / cy_raw:.1f}x, "
              f"workload {py_work / cy_work:.1f}x")


if __name__ == "__main__":
    main()
