# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops: row reduction over F_p and the closed-subset scan."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t

cnp.import_array()


cdef inline int64_t _modinv(int64_t a, int64_t p) nogil:
    cdef int64_t t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def rref_mod_p(a, long p):
    """Reduced row echelon form of ``a`` over F_p.

    Returns ``(R, pivots)`` with ``R`` a fresh int64 array and ``pivots`` the
    tuple of pivot column indices.
    """
    cdef cnp.ndarray[int64_t, ndim=2] arr = np.ascontiguousarray(np.mod(np.asarray(a, dtype=np.int64), p))
    cdef int64_t[:, ::1] r = arr
    cdef Py_ssize_t m = r.shape[0]
    cdef Py_ssize_t n = r.shape[1]
    cdef Py_ssize_t row = 0, col, i, k, piv
    cdef int64_t inv, f, tmp
    cdef int64_t pp = p
    pivots = []
    for col in range(n):
        if row >= m:
            break
        piv = -1
        for i in range(row, m):
            if r[i, col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != row:
            for k in range(n):
                tmp = r[row, k]
                r[row, k] = r[piv, k]
                r[piv, k] = tmp
        inv = _modinv(r[row, col], pp)
        if inv != 1:
            for k in range(col, n):
                r[row, k] = (r[row, k] * inv) % pp
        for i in range(m):
            if i != row and r[i, col] != 0:
                f = r[i, col]
                for k in range(col, n):
                    tmp = (r[i, k] - f * r[row, k]) % pp
                    if tmp < 0:
                        tmp += pp
                    r[i, k] = tmp
        pivots.append(col)
        row += 1
    return arr, tuple(pivots)


def closed_subsets(int n_items, quot_masks, ext_masks):
    """All bitmasks ``S`` over ``n_items`` closed under the closure tables.

    ``quot_masks[i]`` must be contained in ``S`` whenever bit ``i`` is set and
    ``ext_masks[i, j]`` whenever bits ``i`` and ``j`` are both set.
    """
    if n_items > 30:
        raise ValueError("closed_subsets supports at most 30 items")
    cdef uint64_t[::1] quot = np.ascontiguousarray(quot_masks, dtype=np.uint64)
    cdef uint64_t[:, ::1] ext = np.ascontiguousarray(ext_masks, dtype=np.uint64)
    cdef uint64_t total = (<uint64_t>1) << n_items
    cdef uint64_t s, rest, rest2, missing
    cdef int i, j
    cdef bint ok
    out = []
    s = 0
    while s < total:
        missing = ~s
        ok = True
        rest = s
        while rest and ok:
            i = _lowbit(rest)
            rest &= rest - 1
            if quot[i] & missing:
                ok = False
                break
            rest2 = s
            while rest2:
                j = _lowbit(rest2)
                rest2 &= rest2 - 1
                if ext[i, j] & missing:
                    ok = False
                    break
        if ok:
            out.append(s)
        s += 1
    return np.array(out, dtype=np.uint64)


cdef inline int _lowbit(uint64_t x) nogil:
    cdef int i = 0
    while not (x & 1):
        x >>= 1
        i += 1
    return i
