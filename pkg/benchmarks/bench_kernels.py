"""Compare the compiled graph kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--sizes 256,1024,4096] [--repeat 3]
"""
from __future__ import annotations

import argparse
import timeit

from advicelab import _kernels_py
from advicelab.generate import random_graph, random_ring

try:
    from advicelab import _kernels
except ImportError:
    _kernels = None


def cases(g):
    ip, ix, lab = g.indptr, g.indices, g.label_array
    return {
        "bfs_dist": lambda m: m.bfs_dist(ip, ix, 0, -1),
        "flood_max(r=16)": lambda m: m.flood_max(ip, ix, lab, 16),
        "eccentricities": lambda m: m.eccentricities(ip, ix),
    }


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", default="256,1024,4096")
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args(argv)
    if _kernels is None:
        print("compiled extension not built; only the pure-Python timings are shown")
    print(f"{'graph':<18}{'kernel':<18}{'python s':>11}{'compiled s':>12}{'speedup':>9}")
    for n in (int(x) for x in args.sizes.split(",")):
        for name, g in ((f"ring n={n}", random_ring(n, 1)), (f"graph n={n}", random_graph(n, 1))):
            for kernel, fn in cases(g).items():
                if kernel == "eccentricities" and n > 1024:
                    continue  # quadratic; the pure version takes minutes
                slow = min(timeit.repeat(lambda: fn(_kernels_py), number=1, repeat=args.repeat))
                if _kernels is None:
                    print(f"{name:<18}{kernel:<18}{slow:>11.4f}{'-':>12}{'-':>9}")
                    continue
                fast = min(timeit.repeat(lambda: fn(_kernels), number=1, repeat=args.repeat))
                print(f"{name:<18}{kernel:<18}{slow:>11.4f}{fast:>12.5f}{slow / fast:>8.1f}x")


if __name__ == "__main__":
    main()
