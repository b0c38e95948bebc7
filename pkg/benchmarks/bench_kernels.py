#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Times the three hot operations (batched 3x3 multiplication, pairwise
product sets, BFS closure) on hyperplane-sized inputs over GF(2) and GF(3),
plus one end-to-end factorization workload through the public API.

Usage: python benchmarks/bench_kernels.py
"""

import itertools
import random
import time

from spanfactor import _kernels_py

try:
    from spanfactor import _kernels_cy
except ImportError:
    _kernels_cy = None


def hyperplane_elements(p, n, trace_zero=True):
    out = []
    for flat in itertools.product(range(p), repeat=n * n):
        if not trace_zero or sum(flat[i * n + i] for i in range(n)) % p == 0:
            out.append(flat)
    return out


def bench(label, fn, repeat=3):
    best = min(timed(fn) for _ in range(repeat))
    print(f"  {label:<58s} {best * 1000:10.1f} ms")
    return best


def timed(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def run_backend(name, impl):
    print(f"{name} backend")
    rng = random.Random(0)
    mats = [tuple(rng.randrange(5) for _ in range(9)) for _ in range(2000)]

    def batched_mul():
        acc = mats[0]
        for m in mats:
            acc = impl.mat_mul_mod(acc, m, 3, 3, 3, 5)
        return acc

    results = {}
    results["mul"] = bench("mat_mul_mod: fold 2000 random 3x3 over GF(5)", batched_mul)

    elems2 = hyperplane_elements(2, 3)
    results["pairs2"] = bench(
        f"product_pairs_mod: {len(elems2)}^2 products over GF(2)",
        lambda: impl.product_pairs_mod(list(elems2), 3, 2))

    elems3 = hyperplane_elements(3, 3)
    results["pairs3"] = bench(
        f"product_pairs_mod: {len(elems3)}^2 products over GF(3)",
        lambda: impl.product_pairs_mod(list(elems3), 3, 3), repeat=1)

    results["closure"] = bench(
        f"closure_mod: BFS closure of the {len(elems2)}-element hyperplane",
        lambda: impl.closure_mod(list(elems2), 3, 2, 10 ** 6))

    def ranks():
        for m in mats:
            impl.rank_mod(m, 3, 3, 5)

    results["rank"] = bench("rank_mod: 2000 ranks over GF(5)", ranks)
    print()
    return results


def run_end_to_end():
    import os
    print(f"end-to-end (current backend: "
          f"{'python' if os.environ.get('SPANFACTOR_PURE') else 'auto'})")
    from spanfactor import GF, Hyperplane, Matrix, SearchBudget, hyperplane_pair_factor
    from spanfactor.kernels import BACKEND
    from spanfactor import oracle

    f2 = GF(2)
    budget = SearchBudget()
    h = Hyperplane(Matrix.identity(f2, 3))
    targets = [Matrix._raw(f2, 3, 3, flat)
               for flat in itertools.product(range(2), repeat=9) if any(flat)]

    def workload():
        for m in targets:
            hyperplane_pair_factor(h, m, budget)
        oracle.product_set(h)

    took = timed(workload)
    print(f"  [{BACKEND}] 511 pair factorizations + product set      "
          f"{took * 1000:10.1f} ms\n")


def main():
    py = run_backend("pure-python", _kernels_py)
    if _kernels_cy is not None:
        cy = run_backend("cython", _kernels_cy)
        print("speedups (pure / compiled)")
        for key in py:
            print(f"  {key:<12s} {py[key] / cy[key]:6.1f}x")
        print()
    else:
        print("compiled kernels not built; only the fallback was timed\n")
    run_end_to_end()


if __name__ == "__main__":
    main()
