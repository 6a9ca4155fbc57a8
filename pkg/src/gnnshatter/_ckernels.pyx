# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled CSR kernels: neighbor sums and one round of color refinement."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

cnp.import_array()

ctypedef cnp.int64_t i64


def csr_sum_f64(const i64[::1] indptr, const i64[::1] indices, const double[::1] x):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    out = np.zeros(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t v, e
    cdef double acc
    with nogil:
        for v in range(n):
            acc = 0.0
            for e in range(indptr[v], indptr[v + 1]):
                acc += x[indices[e]]
            o[v] = acc
    return out


def csr_sum_i64(const i64[::1] indptr, const i64[::1] indices, const i64[::1] x):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    out = np.zeros(n, dtype=np.int64)
    cdef i64[::1] o = out
    cdef Py_ssize_t v, e
    cdef i64 acc
    with nogil:
        for v in range(n):
            acc = 0
            for e in range(indptr[v], indptr[v + 1]):
                acc += x[indices[e]]
            o[v] = acc
    return out


cdef inline int _cmp_sig(i64 a, i64 b, const i64* own, const i64* ptr,
                         const i64* nc) noexcept nogil:
    # signature = (own color, sorted neighbor colors); shorter prefix sorts first
    cdef i64 i, la, lb, m, ca, cb
    if own[a] != own[b]:
        return -1 if own[a] < own[b] else 1
    la = ptr[a + 1] - ptr[a]
    lb = ptr[b + 1] - ptr[b]
    m = la if la < lb else lb
    for i in range(m):
        ca = nc[ptr[a] + i]
        cb = nc[ptr[b] + i]
        if ca != cb:
            return -1 if ca < cb else 1
    if la != lb:
        return -1 if la < lb else 1
    return 0


cdef void _sort_i64(i64* a, i64* tmp, i64 n) noexcept nogil:
    # bottom-up merge sort on plain integers
    cdef i64 width = 1, lo, mid, hi, i, j, k
    cdef i64* src = a
    cdef i64* dst = tmp
    cdef i64* t
    while width < n:
        lo = 0
        while lo < n:
            mid = lo + width if lo + width < n else n
            hi = lo + 2 * width if lo + 2 * width < n else n
            i = lo; j = mid; k = lo
            while i < mid and j < hi:
                if src[j] < src[i]:
                    dst[k] = src[j]; j += 1
                else:
                    dst[k] = src[i]; i += 1
                k += 1
            while i < mid:
                dst[k] = src[i]; i += 1; k += 1
            while j < hi:
                dst[k] = src[j]; j += 1; k += 1
            lo += 2 * width
        t = src; src = dst; dst = t
        width *= 2
    if src != a:
        for i in range(n):
            a[i] = src[i]


cdef void _sort_vertices(i64* a, i64* tmp, i64 n, const i64* own, const i64* ptr,
                         const i64* nc) noexcept nogil:
    cdef i64 width = 1, lo, mid, hi, i, j, k
    cdef i64* src = a
    cdef i64* dst = tmp
    cdef i64* t
    while width < n:
        lo = 0
        while lo < n:
            mid = lo + width if lo + width < n else n
            hi = lo + 2 * width if lo + 2 * width < n else n
            i = lo; j = mid; k = lo
            while i < mid and j < hi:
                if _cmp_sig(src[j], src[i], own, ptr, nc) < 0:
                    dst[k] = src[j]; j += 1
                else:
                    dst[k] = src[i]; i += 1
                k += 1
            while i < mid:
                dst[k] = src[i]; i += 1; k += 1
            while j < hi:
                dst[k] = src[j]; j += 1; k += 1
            lo += 2 * width
        t = src; src = dst; dst = t
        width *= 2
    if src != a:
        for i in range(n):
            a[i] = src[i]


def refine(const i64[::1] indptr, const i64[::1] indices, const i64[::1] colors):
    """Return canonical colors of (own color, neighbor color multiset) signatures."""
    cdef i64 n = indptr.shape[0] - 1
    cdef i64 nnz = indices.shape[0]
    out = np.empty(n, dtype=np.int64)
    cdef i64[::1] o = out
    if n == 0:
        return out
    nc_arr = np.empty(max(nnz, 1), dtype=np.int64)
    order_arr = np.arange(n, dtype=np.int64)
    dense_arr = np.empty(n, dtype=np.int64)
    remap_arr = np.full(n, -1, dtype=np.int64)
    cdef i64[::1] nc = nc_arr
    cdef i64[::1] order = order_arr
    cdef i64[::1] dense = dense_arr
    cdef i64[::1] remap = remap_arr
    cdef i64 buf_len = nnz if nnz > n else n
    cdef i64* tmp = <i64*> malloc((buf_len + 1) * sizeof(i64))
    if tmp == NULL:
        raise MemoryError()
    cdef i64 v, e, cur, nxt
    try:
        with nogil:
            for v in range(n):
                for e in range(indptr[v], indptr[v + 1]):
                    nc[e] = colors[indices[e]]
                _sort_i64(&nc[indptr[v]], tmp, indptr[v + 1] - indptr[v])
            _sort_vertices(&order[0], tmp, n, &colors[0], &indptr[0], &nc[0])
            cur = 0
            dense[order[0]] = 0
            for v in range(1, n):
                if _cmp_sig(order[v - 1], order[v], &colors[0], &indptr[0], &nc[0]) != 0:
                    cur += 1
                dense[order[v]] = cur
            nxt = 0
            for v in range(n):
                if remap[dense[v]] < 0:
                    remap[dense[v]] = nxt
                    nxt += 1
                o[v] = remap[dense[v]]
    finally:
        free(tmp)
    return out
