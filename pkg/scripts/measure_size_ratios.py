"""Hopset sizes on ER graphs (m = 5n) against n^(1 + 1/(2^(k+1) - 1)).

Prints per (n, k) the mean total ratio and the per-level ratio of mean
|E_i| to its expected bound, with build times.
"""
import argparse
import time

import numpy as np

from hopsets import build_hopset, generate_graph, size_stats


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ns", type=int, nargs="+", default=[512, 2048, 8192])
    ap.add_argument("--ks", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--seeds", type=int, default=5)
    args = ap.parse_args()

    print(f"{'n':>6} {'k':>2} {'|H|/unit':>9}  per-level mean/bound            sec/build")
    for n in args.ns:
        for k in args.ks:
            stats, t0 = [], time.perf_counter()
            for s in range(args.seeds):
                g = generate_graph("erdos-renyi", n, m=5 * n, seed=1000 + s)
                stats.append(size_stats(build_hopset(g, k, s)[0]))
            dt = (time.perf_counter() - t0) / args.seeds
            total = np.mean([st.total for st in stats]) / stats[0].unit
            levels = np.mean([st.counts for st in stats], axis=0) / np.array(stats[0].bounds)
            print(f"{n:6d} {k:2d} {total:9.3f}  {' '.join(f'{x:.3f}' for x in levels):30s} {dt:8.2f}")


if __name__ == "__main__":
    main()
