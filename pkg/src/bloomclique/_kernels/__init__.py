"""Kernel dispatch: compiled extension when importable, numpy fallback otherwise.

Set BLOOMCLIQUE_NO_EXT=1 to force the fallback.  BACKEND names the active
implementation ("c" or "python").  Both expose identical batch primitives;
hash_batch adds the overflow guard and drops to exact big-int scalars
whenever uint64 arithmetic could wrap, so results never depend on the
backend.
"""

from __future__ import annotations

import os

import numpy as np

from ..bits import BitArray
from ..hashing import (
    CWHashSpec,
    PolyHashSpec,
    ToeplitzHashSpec,
    hash_value,
)

if os.environ.get("BLOOMCLIQUE_NO_EXT") == "1":
    from . import _pykernels as _impl

    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "c"
    except ImportError:
        from . import _pykernels as _impl

        BACKEND = "python"

cw_batch = _impl.cw_batch
tp_batch = _impl.tp_batch
poly_batch = _impl.poly_batch
test_bits = _impl.test_bits
or_reduce_select = _impl.or_reduce_select

_U64_MAX = 2**64 - 1


def batch_safe(spec, max_x: int) -> bool:
    """True when every uint64 intermediate stays below 2**64."""
    if isinstance(spec, (CWHashSpec, PolyHashSpec)):
        # worst accumulator before a reduction is (p-1)*max_x + (p-1)
        return (spec.p - 1) * max_x + (spec.p - 1) <= _U64_MAX
    if isinstance(spec, ToeplitzHashSpec):
        return 2 * spec.c <= 64 and max_x <= _U64_MAX
    return False


def hash_batch(spec, codes) -> np.ndarray:
    """Hash a vector of edge codes; 1-based indices.

    codes may be a uint64 ndarray or any int sequence.  Falls back to the
    scalar big-int path when the guard fails (huge n), so callers never
    need to care which backend ran.  Output is uint32 unless m itself
    overflows that, which only the fallback path can reach.
    """
    out_t = np.uint32 if spec.m < 2**32 else np.uint64
    if isinstance(codes, np.ndarray):
        arr = codes.astype(np.uint64, copy=False)
        max_x = int(arr.max()) if arr.size else 0
    else:
        codes = list(codes)
        max_x = max(codes) if codes else 0
        if not batch_safe(spec, max_x):
            return np.array(
                [hash_value(spec, x) for x in codes], dtype=np.uint64
            ).astype(out_t)
        arr = np.array(codes, dtype=np.uint64)
    if not batch_safe(spec, max_x):
        return np.array(
            [hash_value(spec, int(x)) for x in arr], dtype=np.uint64
        ).astype(out_t)
    if isinstance(spec, CWHashSpec):
        return cw_batch(spec.a, spec.b, spec.p, spec.m, arr)
    if isinstance(spec, ToeplitzHashSpec):
        masks = np.array(spec.row_masks(), dtype=np.uint64)
        return tp_batch(masks, spec.m, arr)
    if isinstance(spec, PolyHashSpec):
        return poly_batch(np.array(spec.coeffs, dtype=np.uint64), spec.p, spec.m, arr)
    raise TypeError(f"not a hash spec: {spec!r}")


def array_words(arr: BitArray) -> np.ndarray:
    """BitArray payload as little-endian uint64 words for test_bits."""
    raw = arr.to_bytes()
    pad = (-len(raw)) % 8
    return np.frombuffer(raw + b"\x00" * pad, dtype="<u8").astype(np.uint64)
