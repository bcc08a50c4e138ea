"""Compare the compiled kernels with their pure-Python counterparts.

Run from the repository root after building the extension::

    python benchmarks/bench_kernels.py [--repeat 5]

Each kernel is fed identical inputs; results are checked for equality before
timings are reported.
"""

from __future__ import annotations

import argparse
import random
import sys
import timeit
from itertools import combinations

from srcot import _pure
from srcot.generators import ngon, octahedron_diagonals, random_complex

try:
    from srcot import _ext
except ImportError:
    _ext = None


def membership_table(X):
    table = bytearray(1 << X.n_ambient)
    for f in X.faces:
        table[f] = 1
    return bytes(table)


def incidence_rows(nverts, nedges, seed):
    """Signed edge-vertex incidence rows of a random graph."""
    rng = random.Random(seed)
    rows = []
    for _ in range(nedges):
        u, v = rng.sample(range(nverts), 2)
        rows.append({u: 1, v: -1})
    return rows


def simplex_boundary_rows(n):
    """Coboundary from edges to triangles of the full simplex on ``n`` vertices."""
    edges = {e: i for i, e in enumerate(combinations(range(n), 2))}
    rows = []
    for a, b, c in combinations(range(n), 3):
        rows.append({edges[(b, c)]: 1, edges[(a, c)]: -1, edges[(a, b)]: 1})
    return rows, len(edges)


def cases():
    for name, X in (("D", octahedron_diagonals()), ("E9", ngon(9)), ("random n=7", random_complex(3, 7, 0.5))):
        els = sorted(X.faces - {0}, key=lambda f: (f.bit_count(), f))
        table = membership_table(X)
        yield f"union_tuples k=3 {name}", "union_tuples", (els, 3, table)
        yield f"chain_tuples k=3 {name}", "chain_tuples", (els, 3)
    for nv, ne in ((100, 300), (300, 1000)):
        yield f"rank_sparse graph {ne}x{nv}", "rank_sparse", (incidence_rows(nv, ne, nv), nv)
    for n in (10, 16):
        rows, ncols = simplex_boundary_rows(n)
        yield f"rank_sparse simplex {len(rows)}x{ncols}", "rank_sparse", (rows, ncols)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _ext is None:
        print("compiled extension not available; build it with `pip install -e . --no-build-isolation`")
        return 1
    print(f"{'case':38s} {'python ms':>10s} {'cython ms':>10s} {'speedup':>8s}")
    for label, fn, inputs in cases():
        slow, fast = getattr(_pure, fn), getattr(_ext, fn)
        if slow(*inputs) != fast(*inputs):
            print(f"{label}: results differ")
            return 2
        t_py = min(timeit.repeat(lambda: slow(*inputs), number=1, repeat=args.repeat)) * 1e3
        t_cy = min(timeit.repeat(lambda: fast(*inputs), number=1, repeat=args.repeat)) * 1e3
        print(f"{label:38s} {t_py:10.2f} {t_cy:10.2f} {t_py / t_cy:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
