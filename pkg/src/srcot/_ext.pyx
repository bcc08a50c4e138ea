# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels mirroring :mod:`srcot._pure`.

``rank_sparse`` works on int64 with checked arithmetic and raises
``OverflowError`` when an intermediate leaves the int64 range; the selector in
:mod:`srcot.kernels` then reruns the exact pure-Python version.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint8_t
from libc.stdlib cimport llabs

cnp.import_array()

BACKEND = "cython"

cdef extern from *:
    """
    static inline int srcot_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int srcot_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int srcot_mul_ovf(long long a, long long b, long long *r) nogil
    int srcot_sub_ovf(long long a, long long b, long long *r) nogil


cdef inline long long _gcd(long long a, long long b) nogil:
    a = llabs(a)
    b = llabs(b)
    while b:
        a, b = b, a % b
    return a


def rank_sparse(rows, Py_ssize_t ncols):
    """Exact rank of an integer matrix given as sparse rows (int64, checked)."""
    cdef Py_ssize_t nrows = len(rows)
    if nrows == 0 or ncols == 0:
        return 0
    cdef Py_ssize_t cap = min(nrows, ncols)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] W = np.zeros((cap, ncols), dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] buf = np.zeros(ncols, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] pivcol = np.zeros(cap, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] order = np.zeros(cap, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] lastcol = np.zeros(cap, dtype=np.int64)
    cdef int64_t[:, ::1] w = W
    cdef int64_t[::1] v = buf
    cdef Py_ssize_t rank = 0, t, pos, j, pc, lo, hi, mid, first, last, slot
    cdef long long pv, rc, x, y, g, sign
    cdef bint nonzero
    for raw in rows:
        first = ncols
        last = -1
        for c, val in raw.items():
            if val:
                j = c
                v[j] = val
                if j < first:
                    first = j
                if j > last:
                    last = j
        if last < 0:
            continue
        for pos in range(rank):
            t = order[pos]
            pc = pivcol[t]
            if pc > last:
                break
            rc = v[pc]
            if rc == 0:
                continue
            pv = w[t, pc]
            if lastcol[t] > last:
                last = lastcol[t]
            g = 0
            for j in range(first, last + 1):
                if srcot_mul_ovf(pv, v[j], &x) or srcot_mul_ovf(rc, w[t, j], &y) or srcot_sub_ovf(x, y, &x):
                    for j in range(ncols):
                        v[j] = 0
                    raise OverflowError("int64 overflow in rank_sparse")
                v[j] = x
                if x:
                    g = _gcd(g, x)
            if g > 1:
                for j in range(first, last + 1):
                    v[j] = v[j] // g
            while first <= last and v[first] == 0:
                first += 1
            if first > last:
                break
        nonzero = False
        for j in range(ncols):
            if v[j]:
                first = j
                nonzero = True
                break
        if not nonzero:
            continue
        last = first
        for j in range(first, ncols):
            if v[j]:
                last = j
        slot = rank
        sign = -1 if v[first] < 0 else 1
        for j in range(ncols):
            w[slot, j] = sign * v[j]
            v[j] = 0
        pivcol[slot] = first
        lastcol[slot] = last
        lo = 0
        hi = rank
        while lo < hi:
            mid = (lo + hi) // 2
            if pivcol[order[mid]] < first:
                lo = mid + 1
            else:
                hi = mid
        for j in range(rank, lo, -1):
            order[j] = order[j - 1]
        order[lo] = slot
        rank += 1
        if rank == cap:
            break
    return rank


def union_tuples(elements, int k, table, long long a=0, long long b=0):
    """Index tuples with ``table[(union | a) & ~b]`` set; see ``_pure.union_tuples``."""
    cdef Py_ssize_t n = len(elements)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] E = np.asarray(elements, dtype=np.int64)
    cdef const uint8_t[::1] T = table
    cdef long long nb = ~b
    cdef Py_ssize_t i, j, l
    cdef long long ui, uj, ul
    out = []
    if k == 1:
        for i in range(n):
            if T[(E[i] | a) & nb]:
                out.append((i,))
        return out
    if k == 2:
        for i in range(n):
            ui = E[i] | a
            if not T[ui & nb]:
                continue
            for j in range(i + 1, n):
                uj = ui | E[j]
                if T[uj & nb]:
                    out.append((i, j))
        return out
    if k == 3:
        for i in range(n):
            ui = E[i] | a
            if not T[ui & nb]:
                continue
            for j in range(i + 1, n):
                uj = ui | E[j]
                if not T[uj & nb]:
                    continue
                for l in range(j + 1, n):
                    ul = uj | E[l]
                    if T[ul & nb]:
                        out.append((i, j, l))
        return out
    raise ValueError("union_tuples supports k = 1, 2, 3")


def chain_tuples(elements, int k):
    """Strict inclusion chains of length ``k`` (k <= 3)."""
    cdef Py_ssize_t n = len(elements)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] E = np.asarray(elements, dtype=np.int64)
    cdef Py_ssize_t i, j, l
    out = []
    if k == 1:
        return [(i,) for i in range(n)]
    if k == 2:
        for i in range(n):
            for j in range(i + 1, n):
                if E[j] & E[i] == E[i]:
                    out.append((i, j))
        return out
    if k == 3:
        for i in range(n):
            for j in range(i + 1, n):
                if E[j] & E[i] != E[i]:
                    continue
                for l in range(j + 1, n):
                    if E[l] & E[j] == E[j]:
                        out.append((i, j, l))
        return out
    raise ValueError("chain_tuples supports k = 1, 2, 3")


def pair_tuples(Py_ssize_t n):
    cdef Py_ssize_t i, j
    return [(i, j) for i in range(n) for j in range(i + 1, n)]
