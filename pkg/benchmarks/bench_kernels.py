"""Compare compiled and fallback kernels on family graphs.

    python benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import json
import time

import numpy as np

from gnnshatter import kernels
from gnnshatter.constructions import build_pl_graph, build_sine_graph
from gnnshatter.wl import canonical_colors


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    graphs = {
        "sine b=4 j=4": build_sine_graph(4, 4, explicit=True).graph,
        "sine b=5 j=1": build_sine_graph(5, 1, explicit=True).graph,
        "pl b=10 j=5": build_pl_graph(10, 5).graph,
    }
    rows = []
    for name, g in graphs.items():
        ones_i = np.ones(g.n, dtype=np.int64)
        ones_f = np.ones(g.n)
        # round-1 colors: degrees
        colors = canonical_colors(g.degrees())
        for impl_name, impl in sorted(kernels.IMPLEMENTATIONS.items()):
            rows.append({
                "graph": name,
                "n": g.n,
                "nnz": len(g.indices),
                "impl": impl_name,
                "csr_sum_i64_s": best_of(lambda: impl.csr_sum_i64(g.indptr, g.indices, ones_i), args.repeat),
                "csr_sum_f64_s": best_of(lambda: impl.csr_sum_f64(g.indptr, g.indices, ones_f), args.repeat),
                "refine_s": best_of(lambda: impl.refine(g.indptr, g.indices, colors), max(1, args.repeat // 2)),
            })
    width = max(len(r["graph"]) for r in rows)
    print(f"{'graph'.ljust(width)}  {'impl':7} {'n':>7} {'nnz':>10} {'sum_i64':>10} {'sum_f64':>10} {'refine':>10}")
    for r in rows:
        print(f"{r['graph'].ljust(width)}  {r['impl']:7} {r['n']:>7} {r['nnz']:>10} "
              f"{r['csr_sum_i64_s']:>10.4f} {r['csr_sum_f64_s']:>10.4f} {r['refine_s']:>10.4f}")

    # end to end: exact forward and stable refinement with each kernel set swapped in
    from gnnshatter.bits import BitVector
    from gnnshatter.constructions import build_pl_gnn, build_sine_gnn
    from gnnshatter.gnn import forward
    from gnnshatter.wl import wl_stable

    saved = (kernels.csr_sum_i64, kernels.csr_sum_f64, kernels.refine)
    print()
    print(f"{'end-to-end'.ljust(width)}  {'impl':7} {'forward':>10} {'wl_stable':>10}")
    for name, g in graphs.items():
        spec = build_sine_gnn(BitVector((1, 0, 1, 1))) if name.startswith("sine") else build_pl_gnn(BitVector((1,) * 10))
        for impl_name, impl in sorted(kernels.IMPLEMENTATIONS.items()):
            kernels.csr_sum_i64, kernels.csr_sum_f64, kernels.refine = impl.csr_sum_i64, impl.csr_sum_f64, impl.refine
            tf = best_of(lambda: forward(spec, g), args.repeat)
            tw = best_of(lambda: wl_stable(g), 1)
            print(f"{name.ljust(width)}  {impl_name:7} {tf:>10.4f} {tw:>10.4f}")
    kernels.csr_sum_i64, kernels.csr_sum_f64, kernels.refine = saved
    print(json.dumps({"active_backend": kernels.BACKEND}))


if __name__ == "__main__":
    main()
