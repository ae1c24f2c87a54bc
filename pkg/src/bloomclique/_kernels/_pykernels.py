"""Numpy implementations of the hot kernels.

Semantics are the contract: the compiled extension must agree bit for bit.
All callers guarantee inputs small enough that no uint64 intermediate can
overflow (dispatch in __init__ enforces this before choosing a backend).
"""

from __future__ import annotations

import numpy as np

if hasattr(np, "bitwise_count"):
    def _parity(v):
        return (np.bitwise_count(v) & np.uint64(1)).astype(np.uint64)
else:
    def _parity(v):
        v = v ^ (v >> np.uint64(32))
        v = v ^ (v >> np.uint64(16))
        v = v ^ (v >> np.uint64(8))
        v = v ^ (v >> np.uint64(4))
        v = v ^ (v >> np.uint64(2))
        v = v ^ (v >> np.uint64(1))
        return v & np.uint64(1)


def cw_batch(a, b, p, m, xs):
    """(((a*x + b) mod p) mod m) + 1 over a uint64 vector; 1-based output."""
    h = ((np.uint64(a) * xs + np.uint64(b)) % np.uint64(p)) % np.uint64(m)
    return (h + np.uint64(1)).astype(np.uint32)


def tp_batch(row_masks, m, xs):
    """Toeplitz rows as uint64 masks, first mask giving the top output bit."""
    t = np.zeros(xs.shape[0], dtype=np.uint64)
    for mask in row_masks:
        t = (t << np.uint64(1)) | _parity(xs & np.uint64(mask))
    return ((t % np.uint64(m)) + np.uint64(1)).astype(np.uint32)


def poly_batch(coeffs, p, m, xs):
    """Horner evaluation of sum a_i x^i mod p, then mod m, 1-based."""
    acc = np.zeros(xs.shape[0], dtype=np.uint64)
    for a in coeffs[::-1]:
        acc = (acc * xs + np.uint64(a)) % np.uint64(p)
    return ((acc % np.uint64(m)) + np.uint64(1)).astype(np.uint32)


def test_bits(words, idxs):
    """Bit lookups: idxs are 1-based positions into a little-endian word vector."""
    j = idxs.astype(np.int64) - 1
    w = words[j >> 6]
    return ((w >> (j & 63).astype(np.uint64)) & np.uint64(1)).astype(np.uint8)


def or_reduce_select(words, picks):
    """OR together selected word rows: out[s] = OR of words[picks[s, k]]."""
    return np.bitwise_or.reduce(words[picks], axis=1)
