"""Pure-Python kernels; reference semantics for the compiled ``_ext`` module."""

from __future__ import annotations

from itertools import combinations
from math import gcd
from typing import Mapping, Sequence

BACKEND = "python"


def rank_sparse(rows: Sequence[Mapping[int, int]], ncols: int) -> int:
    """Exact rank of an integer matrix given as sparse rows.

    Incremental fraction-free echelon form: each incoming row is reduced by
    the pivot rows in increasing pivot-column order (``r <- p*r - r_c*P``),
    then divided by the gcd of its entries.  Python ints never overflow.
    """
    pivots: dict[int, dict[int, int]] = {}
    order: list[int] = []
    for raw in rows:
        row = {c: int(v) for c, v in raw.items() if v}
        if not row:
            continue
        for pc in order:
            rc = row.get(pc)
            if not rc:
                continue
            prow = pivots[pc]
            pv = prow[pc]
            new = {c: pv * v for c, v in row.items()}
            for c, v in prow.items():
                x = new.get(c, 0) - rc * v
                if x:
                    new[c] = x
                else:
                    new.pop(c, None)
            row = new
            if not row:
                break
            g = 0
            for v in row.values():
                g = gcd(g, v)
                if g == 1:
                    break
            if g > 1:
                row = {c: v // g for c, v in row.items()}
        if not row:
            continue
        lead = min(row)
        if row[lead] < 0:
            row = {c: -v for c, v in row.items()}
        pivots[lead] = row
        _insort(order, lead)
        if len(order) == ncols:
            break
    return len(order)


def _insort(order: list[int], x: int) -> None:
    lo, hi = 0, len(order)
    while lo < hi:
        mid = (lo + hi) // 2
        if order[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    order.insert(lo, x)


def union_tuples(elements: Sequence[int], k: int, table, a: int = 0, b: int = 0) -> list[tuple[int, ...]]:
    """Index tuples ``i0 < ... < i_{k-1}`` with ``table[(∪ e_i | a) & ~b]`` set.

    ``table`` is a membership table indexed by face mask.  Membership is
    assumed monotone (downward closed), which justifies pruning on prefixes.
    """
    nb = ~b
    n = len(elements)
    if k == 1:
        return [(i,) for i in range(n) if table[(elements[i] | a) & nb]]
    out: list[tuple[int, ...]] = []
    prefix = [((i,), elements[i] | a) for i in range(n) if table[(elements[i] | a) & nb]]
    for depth in range(1, k):
        nxt = []
        for idx, u in prefix:
            for j in range(idx[-1] + 1, n):
                w = u | elements[j]
                if table[w & nb]:
                    nxt.append((idx + (j,), w))
        prefix = nxt
    out = [idx for idx, _ in prefix]
    return out


def chain_tuples(elements: Sequence[int], k: int) -> list[tuple[int, ...]]:
    """Strict inclusion chains of length ``k`` among canonically sorted elements."""
    n = len(elements)
    up = [[j for j in range(i + 1, n) if elements[j] & elements[i] == elements[i]] for i in range(n)]
    out: list[tuple[int, ...]] = [(i,) for i in range(n)]
    for _ in range(k - 1):
        out = [c + (j,) for c in out for j in up[c[-1]]]
    return out


def pair_tuples(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))
