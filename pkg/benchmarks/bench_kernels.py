"""Time the numba and numpy oracle kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from weylexp import _kernels
from weylexp.catalog import CATALOG
from weylexp.nsw import nsw_profile
from weylexp.oracle import MC_BLOCK, _profile_arrays, default_truncation
from weylexp.exponents import profile_index_set


def quad_case(name, r, nodes):
    sf = CATALOG[name].load()
    G = sf.charts[0] if sf.charts else profile_index_set(nsw_profile(sf.system), sf.subst)
    A = np.array([a for a, _ in G.pairs], dtype=float)
    logw = np.array([s for _, s in G.pairs], dtype=float) * np.log(r)
    b1 = np.array(G.b, dtype=float) + 1.0
    h = default_truncation(r, G) / nodes
    return lambda which: _kernels.quad_sum(A, logw, b1, nodes, h, which)


def mc_case(name, r):
    prof = nsw_profile(CATALOG[name].load().system)
    owner, coeff, exps, degs = _profile_arrays(prof)
    X = np.random.default_rng(0).uniform(-1, 1, size=(MC_BLOCK, prof.v))
    rpow = r ** degs
    return lambda which: _kernels.inv_lambda(X, owner, coeff, exps, rpow, len(degs), which)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    cases = [
        ("quad martinet N=1 nodes=256", quad_case("martinet", 1e-4, 256)),
        ("quad fractional N=2 nodes=256", quad_case("fractional", 1e-4, 256)),
        ("quad subst-chart N=1 nodes=4096", quad_case("subst-chart", 1e-4, 4096)),
        ("inv_lambda fractional 32768 pts", mc_case("fractional", 1e-3)),
    ]
    print(f"{'case':34s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}")
    for label, fn in cases:
        a, b = fn("numba"), fn("numpy")
        assert np.allclose(a, b, rtol=1e-10), label
        tn = best_of(lambda: fn("numba"), args.repeat)
        tp = best_of(lambda: fn("numpy"), args.repeat)
        print(f"{label:34s} {tn * 1e3:9.2f}ms {tp * 1e3:9.2f}ms {tp / tn:7.1f}x")


if __name__ == "__main__":
    main()
