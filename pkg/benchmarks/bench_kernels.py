#!/usr/bin/env python3
"""Time the compiled kernels against the numpy fallback.

Every batch primitive runs on both implementations over the same inputs;
the table shows median wall time per call and the speedup.  A missing
compiled module is reported and the fallback still runs: the extension
is an accelerator, never a requirement.

    python3 benchmarks/bench_kernels.py [--sizes 1000,100000] [--repeat 9]
"""

from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

from bloomclique import BitArray
from bloomclique._kernels import _pykernels, array_words

try:
    from bloomclique._kernels import _ckernels
except ImportError:
    _ckernels = None


def median_time(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def workloads(size: int, rng: np.random.Generator):
    # shapes typical of n=256 generation: p just above m, five filters
    p, m = 1031, 1024
    xs = rng.integers(0, 65536, size, dtype=np.uint64)
    coeffs = rng.integers(0, p, 8, dtype=np.uint64)
    masks = np.array(
        [rng.integers(1, 1 << 16, dtype=np.uint64) for _ in range(10)],
        dtype=np.uint64,
    )
    arr = BitArray.from_indices(
        m, np.unique(rng.integers(1, m + 1, m // 2)).tolist()
    )
    words = array_words(arr)
    idxs = rng.integers(1, m + 1, size, dtype=np.uint32)
    stack = np.vstack([words] * 5)
    picks = rng.integers(0, stack.shape[0], (size, 5), dtype=np.int32)
    return [
        ("cw_batch", lambda k: k.cw_batch(7, 19, p, m, xs)),
        ("tp_batch", lambda k: k.tp_batch(masks, m, xs)),
        ("poly_batch", lambda k: k.poly_batch(coeffs, p, m, xs)),
        ("test_bits", lambda k: k.test_bits(words, idxs)),
        ("or_reduce_select", lambda k: k.or_reduce_select(stack, picks)),
    ]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="1000,100000",
                    help="comma-separated batch sizes")
    ap.add_argument("--repeat", type=int, default=9,
                    help="timed runs per cell; median reported")
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    rng = np.random.Generator(np.random.PCG64(12345))

    if _ckernels is None:
        print("compiled extension not importable; fallback only\n")
    hdr = f"{'primitive':18} {'size':>8} {'python':>12}"
    if _ckernels is not None:
        hdr += f" {'c':>12} {'speedup':>8}"
    print(hdr)
    for size in sizes:
        for name, call in workloads(size, rng):
            if _ckernels is not None:
                expect = call(_ckernels)
                got = call(_pykernels)
                if not np.array_equal(np.asarray(expect), np.asarray(got)):
                    raise SystemExit(f"backend mismatch in {name}")
            t_py = median_time(lambda: call(_pykernels), args.repeat)
            row = f"{name:18} {size:>8} {t_py * 1e3:>10.3f}ms"
            if _ckernels is not None:
                t_c = median_time(lambda: call(_ckernels), args.repeat)
                row += f" {t_c * 1e3:>10.3f}ms {t_py / t_c:>7.1f}x"
            print(row)


if __name__ == "__main__":
    main()
