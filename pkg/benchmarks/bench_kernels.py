"""Time the numba kernels against the pure-numpy fallback on sweep-sized inputs.

    python benchmarks/bench_kernels.py [--repeats N] [--large]

``--large`` adds submonoid enumeration over Z_6 x Z_6, where the numpy path
alone takes over a minute per call.
"""
import argparse
import time

import numpy as np

from spectilde.algebra import make_ring
from spectilde.kernels import numba_impl, numpy_impl
from spectilde.modules import make_module
from spectilde.oracle import spec_basis
from spectilde.topology import build_spec_space


def dense_topology(n=14, extra=3, seed=0):
    """Singletons on most points plus a few random blocks: thousands of opens."""
    rng = np.random.default_rng(seed)
    basis = [1 << i for i in range(n - extra)]
    basis += [int(m) for m in rng.integers(1, 1 << n, size=extra)]
    return np.array(basis, dtype=np.int64), n


def workloads(large):
    R = make_ring((6, 6) if large else (4, 6))
    X = build_spec_space(make_module(make_ring(2), [2, 2, 2]))  # 15 points, all indistinguishable
    Y = build_spec_space(make_module(make_ring(6), [2, 2, 6]))  # 16 points, two colon classes
    basis = spec_basis(Y, "min_open")
    opens = numpy_impl.union_closure(basis, Y.n)
    rng = np.random.default_rng(0)
    subsets = rng.integers(0, 1 << Y.n, size=500, dtype=np.int64)
    full = np.int64((1 << Y.n) - 1)
    M = make_module(make_ring(12), [12, 12])
    ind = np.zeros(M.size, dtype=np.bool_)
    ind[M.zero] = True
    dbasis, dn = dense_topology()
    dopens = numpy_impl.union_closure(dbasis, dn)
    dsubsets = rng.integers(0, 1 << dn, size=500, dtype=np.int64)
    dfull = np.int64((1 << dn) - 1)
    tag = "Z6xZ6" if large else "Z4xZ6"
    return {
        f"enumerate_submonoids {tag}": lambda k: k.enumerate_submonoids(R.mul, R.one),
        "union_closure 16 pts": lambda k: k.union_closure(basis, Y.n),
        "smallest_neighbourhoods": lambda k: k.smallest_neighbourhoods(opens, Y.n),
        "closure_batch 500": lambda k: k.closure_batch(opens, subsets, full),
        "interior_batch 500": lambda k: k.interior_batch(opens, subsets),
        "limit_points_batch 500": lambda k: k.limit_points_batch(opens, subsets, Y.n),
        "separated_pairs": lambda k: k.separated_pairs(opens, Y.n),
        "has_proper_clopen": lambda k: k.has_proper_clopen(opens, full),
        "is_intersection_closed": lambda k: k.is_intersection_closed(opens),
        "colon_vector Z12^2": lambda k: k.colon_vector(ind, M.act),
        "union_closure 15 pts": lambda k: k.union_closure(spec_basis(X, "min_open"), X.n),
        f"dense union_closure ({dopens.size} opens)": lambda k: k.union_closure(dbasis, dn),
        "dense smallest_neighbourhoods": lambda k: k.smallest_neighbourhoods(dopens, dn),
        "dense closure_batch 500": lambda k: k.closure_batch(dopens, dsubsets, dfull),
        "dense limit_points_batch 500": lambda k: k.limit_points_batch(dopens, dsubsets, dn),
        "dense separated_pairs": lambda k: k.separated_pairs(dopens, dn),
        "dense is_intersection_closed": lambda k: k.is_intersection_closed(dopens),
    }


def best_of(fn, repeats):
    fn()  # compile / warm up
    best = float("inf")
    for _ in range(repeats):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--large", action="store_true")
    args = ap.parse_args()
    if numba_impl is None:
        raise SystemExit("numba is not importable; nothing to compare")
    print(f"{'kernel':40s} {'numpy ms':>10s} {'numba ms':>10s} {'speedup':>8s}")
    for name, fn in workloads(args.large).items():
        a = best_of(lambda: fn(numpy_impl), args.repeats)
        b = best_of(lambda: fn(numba_impl), args.repeats)
        print(f"{name:40s} {a * 1e3:10.2f} {b * 1e3:10.2f} {a / b:8.1f}x")


if __name__ == "__main__":
    main()
