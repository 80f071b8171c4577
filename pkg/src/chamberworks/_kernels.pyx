# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels (same contracts as _fallback)."""
import numpy as np

cimport numpy as cnp

ctypedef fused table_t:
    short
    int


def hull_mask(const signed char[:, :] signs, const long[:] seed):
    cdef Py_ssize_t nw = signs.shape[0], nv = signs.shape[1], ns = seed.shape[0]
    cdef Py_ssize_t h, j, k
    cdef bint has_neg, has_pos
    cdef signed char s, lo, hi
    out = np.ones(nv, dtype=np.bool_)
    cdef cnp.npy_bool[:] o = out
    with nogil:
        for h in range(nw):
            has_neg = 0
            has_pos = 0
            for k in range(ns):
                s = signs[h, seed[k]]
                if s < 0:
                    has_neg = 1
                elif s > 0:
                    has_pos = 1
            if has_neg and has_pos:
                continue
            # allowed sign range on this wall; branch-free so the loop vectorizes
            lo = -1 if has_neg else 0
            hi = 1 if has_pos else 0
            for j in range(nv):
                s = signs[h, j]
                o[j] = o[j] & (s >= lo) & (s <= hi)
    return out


def rows_into(const table_t[:, :] table, const long[:] cols, const cnp.npy_bool[:] mask):
    cdef Py_ssize_t n = table.shape[0], nc = cols.shape[0], g, k, m = 0
    out = np.empty(n, dtype=np.int64)
    cdef long[:] o = out
    cdef bint ok
    with nogil:
        for g in range(n):
            ok = 1
            for k in range(nc):
                if not mask[table[g, cols[k]]]:
                    ok = 0
                    break
            if ok:
                o[m] = g
                m += 1
    return out[:m]
