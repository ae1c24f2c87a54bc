"""Brute-force ground truth: explicit graphs, clique search, inversion.

Everything here is exponential somewhere and exists to check the compact
representations at desk scale, so each entry point carries a feasibility
guard that trips with GuardExceeded instead of silently burning hours.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import GuardExceeded, OutOfRange
from .owf import Instance, edge_query_batch, rebuild_arrays

MATERIALIZE_GUARD_N = 4096
CLIQUE_GUARD_COMB = 10**9
PREIMAGE_GUARD_COMB = 10**7


def pair_codes(n: int) -> np.ndarray:
    """Encoded codes of all C(n,2) pairs, ascending."""
    iu, iv = np.triu_indices(n, k=1)
    # iu < iv are 0-based endpoints; code = u0 + v0*n sorts by (v, u)
    codes = iu + iv * n
    return np.sort(codes).astype(np.uint64)


@dataclass
class ExplicitGraph:
    """Adjacency-matrix graph on vertices 1..n."""

    n: int
    adj: np.ndarray  # bool, symmetric, zero diagonal

    def has_edge(self, u: int, v: int) -> bool:
        if not (1 <= u <= self.n and 1 <= v <= self.n) or u == v:
            raise OutOfRange(f"pair ({u},{v}) invalid for n={self.n}")
        return bool(self.adj[u - 1, v - 1])

    def edge_count(self) -> int:
        return int(np.triu(self.adj, k=1).sum())

    def edge_density(self) -> Fraction:
        return Fraction(self.edge_count(), math.comb(self.n, 2))

    @classmethod
    def empty(cls, n: int) -> "ExplicitGraph":
        return cls(n, np.zeros((n, n), dtype=bool))

    def with_edges(self, pairs) -> "ExplicitGraph":
        for u, v in pairs:
            self.adj[u - 1, v - 1] = True
            self.adj[v - 1, u - 1] = True
        return self


def materialize(inst: Instance, specs=None, *,
                guard_n: int = MATERIALIZE_GUARD_N) -> ExplicitGraph:
    """Evaluate every pair query into an explicit adjacency matrix."""
    n = inst.n
    if n > guard_n:
        raise GuardExceeded(f"materializing n={n} exceeds guard {guard_n}")
    codes = pair_codes(n)
    pos = edge_query_batch(inst, codes, specs)
    adj = np.zeros((n, n), dtype=bool)
    u0 = (codes % n).astype(np.int64)
    v0 = (codes // n).astype(np.int64)
    adj[u0[pos], v0[pos]] = True
    adj[v0[pos], u0[pos]] = True
    return ExplicitGraph(n, adj)


def find_cliques(g: ExplicitGraph, size: int, *, prune: bool = True,
                 guard_comb: int = CLIQUE_GUARD_COMB) -> list[tuple[int, ...]]:
    """All size-cliques of g, each an ascending tuple, in lexicographic order.

    The default walk intersects candidate sets as it extends, so sparse
    graphs cost far less than C(n, size).  prune=False checks every subset
    instead and therefore insists on the combinatorial guard.
    """
    if size < 1 or size > g.n:
        return []
    if not prune:
        if math.comb(g.n, size) > guard_comb:
            raise GuardExceeded(
                f"C({g.n},{size}) subsets exceed guard {guard_comb} without pruning"
            )
        return [
            tuple(v + 1 for v in vs)
            for vs in itertools.combinations(range(g.n), size)
            if _is_clique(g, tuple(v + 1 for v in vs))
        ]

    n = g.n
    neigh = []
    for v in range(n):
        mask = 0
        for w in np.flatnonzero(g.adj[v]):
            mask |= 1 << int(w)
        neigh.append(mask)

    out: list[tuple[int, ...]] = []
    full = (1 << n) - 1

    def rec(stack: list[int], cand: int):
        if len(stack) == size:
            out.append(tuple(v + 1 for v in stack))
            return
        if len(stack) + cand.bit_count() < size:
            return
        m = cand
        while m:
            vbit = m & -m
            v = vbit.bit_length() - 1
            m ^= vbit
            rec(stack + [v], cand & neigh[v] & ~((vbit << 1) - 1))

    rec([], full)
    return out


def _is_clique(g: ExplicitGraph, vs) -> bool:
    return all(g.has_edge(u, v) for u, v in itertools.combinations(vs, 2))


def preimages(inst: Instance, *, guard_comb: int = PREIMAGE_GUARD_COMB
              ) -> list[tuple[int, ...]]:
    """Every vertex set that regenerates the instance exactly, in lex order.

    The generating clique is always among them.  Basic and multi instances
    go through a vectorized census (per-edge filter masks OR-ed per subset
    and compared against the target); derived and masked re-derive their
    specs per subset, which only the plain path can do.
    """
    ps = inst.params
    n, c = inst.n, ps.c
    total = math.comb(n, c)
    if total > guard_comb:
        raise GuardExceeded(f"C({n},{c})={total} subsets exceed guard {guard_comb}")
    if inst.variant in ("basic", "multi"):
        return _census_fast(inst)
    out = []
    for vs in itertools.combinations(range(1, n + 1), c):
        if rebuild_arrays(inst, vs) == inst.arrays:
            out.append(vs)
    return out


def count_preimages(inst: Instance, *,
                    guard_comb: int = PREIMAGE_GUARD_COMB) -> int:
    return len(preimages(inst, guard_comb=guard_comb))


def _census_fast(inst: Instance) -> list[tuple[int, ...]]:
    ps = inst.params
    n, c, f = inst.n, ps.c, len(inst.arrays)
    m = inst.arrays[0].m
    codes = pair_codes(n)
    E = codes.shape[0]
    W = (f * m + 63) // 64

    # per-edge mask over the concatenation of all filters
    words = np.zeros((E, W), dtype=np.uint64)
    rows = np.arange(E)
    for i, spec in enumerate(inst.specs):
        g = i * m + _kernels.hash_batch(spec, codes).astype(np.int64) - 1
        words[rows, g >> 6] |= np.uint64(1) << (g & 63).astype(np.uint64)

    tval = 0
    for i, arr in enumerate(inst.arrays):
        tval |= arr.to_int() << (i * m)
    target = np.frombuffer(tval.to_bytes(W * 8, "little"), dtype="<u8").astype(np.uint64)

    # edge index lookup by endpoint pair
    eidx = np.full((n, n), -1, dtype=np.int32)
    u0 = (codes % n).astype(np.int64)
    v0 = (codes // n).astype(np.int64)
    eidx[u0, v0] = np.arange(E, dtype=np.int32)

    verts = np.array(
        list(itertools.combinations(range(n), c)), dtype=np.int64
    )
    cols = [
        eidx[verts[:, i], verts[:, j]]
        for i, j in itertools.combinations(range(c), 2)
    ]
    picks = np.stack(cols, axis=1).astype(np.int32)

    built = _kernels.or_reduce_select(words, np.ascontiguousarray(picks))
    hit = np.all(built == target, axis=1)
    return [tuple(int(v) + 1 for v in verts[s]) for s in np.flatnonzero(hit)]


def measure_density(inst: Instance, mode: str = "exact", *, count: int = 10000,
                    seed: int = 0, specs=None):
    """Fraction of pairs the implicit graph reports as edges.

    exact:   every one of the C(n,2) pairs, returned as a Fraction.
    sampled: `count` uniform pairs (with replacement) from a generator
             seeded with `seed`, returned as a float.
    """
    codes = pair_codes(inst.n)
    if mode == "exact":
        pos = edge_query_batch(inst, codes, specs)
        return Fraction(int(pos.sum()), codes.shape[0])
    if mode == "sampled":
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
        picks = rng.integers(0, codes.shape[0], size=count)
        pos = edge_query_batch(inst, codes[picks], specs)
        return float(pos.sum()) / count
    raise OutOfRange(f"unknown density mode {mode!r}")


def planted_gnp(n: int, c: int, alpha: float, rng) -> tuple[ExplicitGraph, tuple[int, ...]]:
    """True independent-edge graph with a planted c-clique.

    Every non-clique pair appears with probability alpha; the clique's own
    pairs are forced present.  Returns the graph and the planted set.
    """
    draws = rng.random((n, n))
    upper = np.triu(draws < alpha, k=1)
    adj = upper | upper.T
    planted = tuple(sorted(int(v) + 1 for v in rng.choice(n, size=c, replace=False)))
    for u, v in itertools.combinations(planted, 2):
        adj[u - 1, v - 1] = True
        adj[v - 1, u - 1] = True
    np.fill_diagonal(adj, False)
    return ExplicitGraph(n, adj), planted


def pair_index_table(n: int) -> tuple[np.ndarray, np.ndarray]:
    """(codes, lookup) where lookup[u0,v0] is the row of (u,v) in codes."""
    codes = pair_codes(n)
    u0 = (codes % n).astype(np.int64)
    v0 = (codes // n).astype(np.int64)
    lut = np.full((n, n), -1, dtype=np.int64)
    lut[u0, v0] = np.arange(codes.shape[0])
    return codes, lut


def spurious_cliques(g: ExplicitGraph, size: int, planted) -> int:
    """Count of size-cliques besides the planted one."""
    found = find_cliques(g, size)
    planted_t = tuple(sorted(planted))
    return sum(1 for t in found if t != planted_t)
