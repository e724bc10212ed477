# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scanning kernels; see ``_pykernels`` for the reference versions."""

from cpython.mem cimport PyMem_Malloc, PyMem_Free

ctypedef long long i64


cdef inline Py_ssize_t _extent(const i64[:] s, Py_ssize_t i, Py_ssize_t src,
                               Py_ssize_t lim) noexcept nogil:
    cdef Py_ssize_t period = i - src
    cdef Py_ssize_t k = 0
    cdef Py_ssize_t q = src
    while k < lim and s[i + k] == s[q]:
        k += 1
        q += 1
        if q == i:
            q = src
    return k


cdef (Py_ssize_t, Py_ssize_t) _longest(const i64[:] s, Py_ssize_t i) noexcept nogil:
    cdef Py_ssize_t n = s.shape[0]
    cdef Py_ssize_t lim = n - i - 1
    cdef Py_ssize_t best_k = 0, best_src = -1, src, k
    cdef i64 first = s[i]
    for src in range(i):
        if s[src] != first:
            continue
        k = _extent(s, i, src, lim)
        if k > best_k:
            best_k = k
            best_src = src
            if k == lim:
                break
    return best_k, best_src


def longest_copy(const i64[:] s, Py_ssize_t i):
    if i >= s.shape[0]:
        return 0, -1
    return _longest(s, i)


def greedy_lz76(const i64[:] s):
    cdef Py_ssize_t n = s.shape[0]
    cdef Py_ssize_t i = 0, k, src
    out = []
    while i < n:
        k, src = _longest(s, i)
        out.append((k + 1, src if k else -1))
        i += k + 1
    return out


def longest_phrase_lengths(const i64[:] s):
    cdef Py_ssize_t n = s.shape[0]
    cdef Py_ssize_t i, k, src
    out = [0] * n
    for i in range(n):
        k, src = _longest(s, i)
        out[i] = k + 1
    return out


def greedy_blz(const i64[:] s, i64 c):
    cdef Py_ssize_t n = s.shape[0]
    cdef i64 *hops = <i64 *> PyMem_Malloc((n + 1) * sizeof(i64))
    if hops == NULL:
        raise MemoryError()
    cdef Py_ssize_t i = 0, lim, src, k, q, t, period, length
    cdef Py_ssize_t best_len, best_src
    cdef i64 cap = c - 1, h, mh, best_mh, first
    out = []
    try:
        with nogil:
            for i in range(n):
                hops[i] = 0
        i = 0
        while i < n:
            lim = n - i - 1
            best_len = 1
            best_src = -1
            best_mh = 0
            if cap >= 0:
                first = s[i]
                with nogil:
                    for src in range(i):
                        if s[src] != first or hops[src] > cap:
                            continue
                        k = 0
                        q = src
                        mh = -1
                        while k < lim:
                            h = hops[q]
                            if h > cap or s[i + k] != s[q]:
                                break
                            if h > mh:
                                mh = h
                            k += 1
                            q += 1
                            if q == i:
                                q = src
                        length = k + 1
                        if length > best_len or (length == best_len and length > 1 and mh < best_mh):
                            best_len = length
                            best_src = src
                            best_mh = mh
            if best_len > 1:
                period = i - best_src
                for t in range(best_len - 1):
                    hops[i + t] = hops[best_src + t % period] + 1
            out.append((best_len, best_src))
            i += best_len
    finally:
        PyMem_Free(hops)
    return out


def source_extents(const i64[:] s, const i64[:] hops, Py_ssize_t i, i64 max_src_hop):
    cdef Py_ssize_t n = s.shape[0]
    cdef Py_ssize_t lim = n - i - 1
    cdef Py_ssize_t src, k, q
    out = [0] * i
    if max_src_hop < 0 or lim <= 0:
        return out
    cdef i64 first = s[i]
    for src in range(i):
        if s[src] != first or hops[src] > max_src_hop:
            continue
        k = 0
        q = src
        while k < lim:
            if hops[q] > max_src_hop or s[i + k] != s[q]:
                break
            k += 1
            q += 1
            if q == i:
                q = src
        out[src] = k
    return out


def has_square(const i64[:] s):
    cdef Py_ssize_t n = s.shape[0]
    cdef Py_ssize_t period, i, run
    cdef bint found = False
    with nogil:
        for period in range(1, n // 2 + 1):
            run = 0
            for i in range(n - period):
                if s[i] == s[i + period]:
                    run += 1
                    if run == period:
                        found = True
                        break
                else:
                    run = 0
            if found:
                break
    return found
