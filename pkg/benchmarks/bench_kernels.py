"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--json out.json]

Each workload is run once per backend to warm up (numba compiles on the
first call, or loads from its on-disk cache) and then timed ``--repeat``
times; the best wall time is reported.  Both backends must return the same
answer, otherwise the script exits non-zero.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from lbtree import _accel
from lbtree._indep import max_independent, min_weight_independent
from lbtree._swap import scan_swaps
from lbtree.families import FamilySpec, generate, sharpness_graph
from lbtree.search import _Rooted, dfs_tree, potential_of


def _sigma_workload(G, k):
    weights = np.array([G.degree(v) for v in range(G.n)], dtype=np.int64)
    return lambda use: min_weight_independent(G, weights, k, use_numba=use)[0]


def _alpha_workload(G):
    return lambda use: max_independent(G, use_numba=use)


def _scan_workload(G, k):
    T, _ = dfs_tree(G, 0)
    cur = potential_of(G, T)
    r = _Rooted(T)
    tail = (cur.score_class, cur.d_st, cur.neg_leg_mass)

    def run(use):
        return scan_swaps(r.n, k, r.t_child, r.t_par, r.preorder, r.parent, r.nu, r.nv, r.deg, tail,
                          use_numba=use)
    return run


def workloads():
    rr = generate(FamilySpec("RandomRejection", {"n": 40, "p_num": 7, "p_den": 10}, 1))
    sparse = generate(FamilySpec("RandomRejection", {"n": 20}, 3))
    sharp = sharpness_graph(3)
    return [
        ("sigma4 RandomRejection n=40", _sigma_workload(rr, 4)),
        ("sigma6 RandomRejection n=20", _sigma_workload(sparse, 6)),
        ("alpha RandomRejection n=40", _alpha_workload(rr)),
        ("alpha sharpness m=3", _alpha_workload(sharp)),
        ("swap scan k=2 sharpness m=3", _scan_workload(sharp, 2)),
        ("swap scan k=3 sharpness m=3", _scan_workload(sharp, 3)),
    ]


def best_time(fn, use, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(use)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", help="also write results to this file")
    args = ap.parse_args(argv)
    if not _accel.HAVE_NUMBA:
        print("numba is not installed; nothing to compare", file=sys.stderr)
        return 1

    rows = []
    print(f"{'workload':32} {'numba ms':>10} {'numpy ms':>10} {'speedup':>8}")
    for name, fn in workloads():
        t0 = time.perf_counter()
        a = fn(True)
        warm = time.perf_counter() - t0
        b = fn(False)
        if a != b:
            print(f"{name}: backends disagree ({a!r} vs {b!r})", file=sys.stderr)
            return 1
        tn = best_time(fn, True, args.repeat)
        tp = best_time(fn, False, args.repeat)
        rows.append({"workload": name, "numba_s": tn, "numpy_s": tp, "first_call_s": warm})
        print(f"{name:32} {tn * 1e3:10.3f} {tp * 1e3:10.3f} {tp / tn:7.1f}x")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
