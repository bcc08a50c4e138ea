"""Kernel selection: the compiled ``_ext`` module when importable, else ``_pure``.

Set ``SRCOT_PURE=1`` to force the pure-Python kernels.
"""

from __future__ import annotations

import os

from . import _pure

_ext = None
if not os.environ.get("SRCOT_PURE"):
    try:
        from . import _ext  # type: ignore[no-redef]
    except ImportError:  # extension not built
        _ext = None

impl = _ext if _ext is not None else _pure
BACKEND: str = impl.BACKEND


def rank_sparse(rows, ncols: int) -> int:
    if impl is _pure:
        return _pure.rank_sparse(rows, ncols)
    try:
        return impl.rank_sparse(rows, ncols)
    except OverflowError:
        return _pure.rank_sparse(rows, ncols)


def union_tuples(elements, k: int, table, a: int = 0, b: int = 0):
    if impl is not _pure and k <= 3 and a < (1 << 62) and b < (1 << 62):
        return impl.union_tuples(elements, k, table, a, b)
    return _pure.union_tuples(elements, k, table, a, b)


def chain_tuples(elements, k: int):
    if impl is not _pure and k <= 3 and all(e < (1 << 62) for e in elements):
        return impl.chain_tuples(elements, k)
    return _pure.chain_tuples(elements, k)
