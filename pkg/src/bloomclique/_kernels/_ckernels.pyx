# cython: boundscheck=False, wraparound=False, cdivision=True
"""C loops for the hot kernels; must agree bit for bit with _pykernels."""

import numpy as np

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil

ctypedef unsigned long long u64
ctypedef unsigned int u32


def cw_batch(u64 a, u64 b, u64 p, u64 m, const u64[::1] xs):
    cdef Py_ssize_t i, n = xs.shape[0]
    out = np.empty(n, dtype=np.uint32)
    cdef u32[::1] o = out
    with nogil:
        for i in range(n):
            o[i] = <u32>((((a * xs[i] + b) % p) % m) + 1)
    return out


def tp_batch(const u64[::1] row_masks, u64 m, const u64[::1] xs):
    cdef Py_ssize_t i, r, n = xs.shape[0], rows = row_masks.shape[0]
    cdef u64 t, x
    out = np.empty(n, dtype=np.uint32)
    cdef u32[::1] o = out
    with nogil:
        for i in range(n):
            x = xs[i]
            t = 0
            for r in range(rows):
                t = (t << 1) | <u64>(__builtin_popcountll(row_masks[r] & x) & 1)
            o[i] = <u32>((t % m) + 1)
    return out


def poly_batch(const u64[::1] coeffs, u64 p, u64 m, const u64[::1] xs):
    cdef Py_ssize_t i, j, n = xs.shape[0], k = coeffs.shape[0]
    cdef u64 acc, x
    out = np.empty(n, dtype=np.uint32)
    cdef u32[::1] o = out
    with nogil:
        for i in range(n):
            x = xs[i]
            acc = 0
            for j in range(k - 1, -1, -1):
                acc = (acc * x + coeffs[j]) % p
            o[i] = <u32>((acc % m) + 1)
    return out


def test_bits(const u64[::1] words, const u32[::1] idxs):
    cdef Py_ssize_t i, n = idxs.shape[0]
    cdef u64 j
    out = np.empty(n, dtype=np.uint8)
    cdef unsigned char[::1] o = out
    with nogil:
        for i in range(n):
            j = idxs[i] - 1
            o[i] = <unsigned char>((words[j >> 6] >> (j & 63)) & 1)
    return out


def or_reduce_select(const u64[:, ::1] words, const int[:, ::1] picks):
    cdef Py_ssize_t s, k, w
    cdef Py_ssize_t S = picks.shape[0], K = picks.shape[1], W = words.shape[1]
    cdef u64 acc
    out = np.zeros((S, W), dtype=np.uint64)
    cdef u64[:, ::1] o = out
    with nogil:
        for s in range(S):
            for w in range(W):
                acc = 0
                for k in range(K):
                    acc |= words[picks[s, k], w]
                o[s, w] = acc
    return out
