"""The four candidate one-way constructions.

Every variant maps an input bit string to a succinct graph: the input
chooses a clique of c = log2(n) vertices, the clique's edges are hashed
into one or more filter arrays, and the arrays (with any carried hash
specs and the choice-order permutation) form the output.

variant   arrays                specs carried    specs come from
basic     1 of length 2c^3      1                input bits
multi     f_multi of m_filter   f_multi          input bits
derived   f_derived of m_filter none             the clique's own edges
masked    1 of m_filter         none             as derived, arrays XOR-folded

Verification is regeneration: rebuild the arrays from the claimed vertex
set (reusing carried specs, or re-deriving them for derived/masked) and
compare bit for bit.  The permutation only recovers the original input
ordering; it never changes the arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from . import _kernels
from .bits import BitArray
from .errors import MalformedSolution, OutOfRange, UnqueryableVariant
from .extract import (
    VARIANTS,
    CliqueSeed,
    RandomString,
    extract_distinct_vertices,
    extract_hash_params,
    vertex_field_bits,
)
from .hashing import (
    HASH_KINDS,
    HashSpec,
    derive_specs_from_clique,
    encode_edge,
    hash_value,
    kind_of,
)
from .params import ParamSet, derive_params


def clique_edges(vertices, n: int) -> list[int]:
    """Encoded edges of the clique, strictly ascending.

    Iterating the sorted vertices with the larger endpoint outermost emits
    codes (u-1)+(v-1)*n already in ascending order, no sort needed.
    """
    vs = sorted(vertices)
    out = []
    for j in range(1, len(vs)):
        for i in range(j):
            out.append(encode_edge(vs[i], vs[j], n))
    return out


@dataclass(frozen=True)
class Instance:
    """One function output: arrays, carried specs, permutation."""

    variant: str
    n: int
    kind: str
    arrays: tuple[BitArray, ...]
    specs: tuple[HashSpec, ...]
    perm: tuple[int, ...]
    k0: int | None = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise OutOfRange(f"unknown variant {self.variant!r}")
        if self.kind not in HASH_KINDS:
            raise OutOfRange(f"unknown hash kind {self.kind!r}")
        ps = self.params
        want_arrays, want_len, want_specs = _dims(ps, self.variant)
        if len(self.arrays) != want_arrays:
            raise OutOfRange(
                f"{self.variant} expects {want_arrays} arrays, got {len(self.arrays)}"
            )
        for arr in self.arrays:
            if arr.m != want_len:
                raise OutOfRange(
                    f"{self.variant} arrays must be {want_len} bits, got {arr.m}"
                )
        if len(self.specs) != want_specs:
            raise OutOfRange(
                f"{self.variant} expects {want_specs} carried specs, got {len(self.specs)}"
            )
        for spec in self.specs:
            if kind_of(spec) != self.kind:
                raise OutOfRange("carried spec kind disagrees with header")
        if sorted(self.perm) != list(range(1, ps.c + 1)):
            raise OutOfRange("perm must be a bijection on 1..c")

    @property
    def params(self) -> ParamSet:
        return derive_params(self.n, self.k0)


def _dims(ps: ParamSet, variant: str) -> tuple[int, int, int]:
    """(array count, array length, carried spec count) for a variant."""
    if variant == "basic":
        return 1, ps.m_basic, 1
    if variant == "multi":
        return ps.f_multi, ps.m_filter, ps.f_multi
    if variant == "derived":
        return ps.f_derived, ps.m_filter, 0
    if variant == "masked":
        return 1, ps.m_filter, 0
    raise OutOfRange(f"unknown variant {variant!r}")


@dataclass(frozen=True)
class Solution:
    """A claimed preimage: the clique's vertex set, strictly ascending."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        vs = self.vertices
        if any(vs[i] >= vs[i + 1] for i in range(len(vs) - 1)):
            raise MalformedSolution("vertices must be strictly ascending")


@dataclass(frozen=True)
class GenerationResult:
    """Instance plus the bookkeeping a generator knows: seed and live specs.

    For derived and masked variants the specs are not part of the instance;
    holding on to them is the only way to query such an instance edge by
    edge later (they are re-derivable from the seed at any time).
    """

    instance: Instance
    seed: CliqueSeed
    specs: tuple[HashSpec, ...]


def _build_arrays(specs, edge_codes, m: int) -> list[BitArray]:
    out = []
    for spec in specs:
        idxs = _kernels.hash_batch(spec, edge_codes)
        val = 0
        for j in idxs:
            val |= 1 << (int(j) - 1)
        out.append(BitArray.from_int(m, val))
    return out


def _specs_for(variant: str, kind: str, ps: ParamSet, rs: RandomString | None,
               edge_codes, poly_degree: int | None):
    """Hash specs a variant uses: read from input bits or re-derived."""
    if variant == "basic":
        return extract_hash_params(
            rs, vertex_field_bits(ps.n, ps.c), kind, ps.m_basic, ps.p_basic,
            1, ps.c, poly_degree,
        )
    if variant == "multi":
        return extract_hash_params(
            rs, vertex_field_bits(ps.n, ps.c), kind, ps.m_filter, ps.p_filter,
            ps.f_multi, ps.c, poly_degree,
        )
    return derive_specs_from_clique(
        edge_codes, ps.c, kind, ps.m_filter, ps.p_filter, ps.f_derived,
        poly_degree,
    )


def generate(rs: RandomString, n: int, variant: str, kind: str = "cw", *,
             k0: int | None = None,
             poly_degree: int | None = None) -> GenerationResult:
    """Evaluate the candidate function on an input string."""
    if variant not in VARIANTS:
        raise OutOfRange(f"unknown variant {variant!r}")
    if kind not in HASH_KINDS:
        raise OutOfRange(f"unknown hash kind {kind!r}")
    ps = derive_params(n, k0)
    seed = extract_distinct_vertices(rs, n, ps.c)
    edge_codes = clique_edges(seed.vertices, n)
    specs = tuple(_specs_for(variant, kind, ps, rs, edge_codes, poly_degree))
    m = _dims(ps, variant)[1]
    arrays = _build_arrays(specs, edge_codes, m)
    if variant == "masked":
        arrays = [reduce(lambda x, y: x.xor(y), arrays)]
    inst = Instance(
        variant=variant, n=n, kind=kind, arrays=tuple(arrays),
        specs=specs if variant in ("basic", "multi") else (),
        perm=seed.perm, k0=k0,
    )
    return GenerationResult(instance=inst, seed=seed, specs=specs)


def generate_basic(rs, n, kind="cw", **kw) -> Instance:
    return generate(rs, n, "basic", kind, **kw).instance


def generate_multi(rs, n, kind="cw", **kw) -> Instance:
    return generate(rs, n, "multi", kind, **kw).instance


def generate_derived(rs, n, kind="cw", **kw) -> Instance:
    return generate(rs, n, "derived", kind, **kw).instance


def generate_masked(rs, n, kind="cw", **kw) -> Instance:
    return generate(rs, n, "masked", kind, **kw).instance


def _checked_vertices(inst: Instance, sol) -> tuple[int, ...]:
    vs = sol.vertices if isinstance(sol, Solution) else tuple(sol)
    c = inst.params.c
    if len(vs) != c:
        raise MalformedSolution(f"need exactly {c} vertices, got {len(vs)}")
    if len(set(vs)) != len(vs):
        raise MalformedSolution("vertices must be distinct")
    if any(vs[i] >= vs[i + 1] for i in range(len(vs) - 1)):
        raise MalformedSolution("vertices must be strictly ascending")
    for v in vs:
        if not 1 <= v <= inst.n:
            raise MalformedSolution(f"vertex {v} outside [1, {inst.n}]")
    return vs


def rebuild_arrays(inst: Instance, vertices) -> tuple[BitArray, ...]:
    """Arrays the instance's pipeline would produce for this vertex set."""
    ps = inst.params
    edge_codes = clique_edges(vertices, inst.n)
    if inst.variant in ("basic", "multi"):
        specs = inst.specs
    else:
        specs = derive_specs_from_clique(
            edge_codes, ps.c, inst.kind, ps.m_filter, ps.p_filter, ps.f_derived
        )
    m = _dims(ps, inst.variant)[1]
    arrays = _build_arrays(specs, edge_codes, m)
    if inst.variant == "masked":
        arrays = [reduce(lambda x, y: x.xor(y), arrays)]
    return tuple(arrays)


def verify(inst: Instance, sol) -> bool:
    """Regeneration equality: does this vertex set reproduce the arrays?

    The carried perm reconstructs the claimed choice order (bookkeeping
    for input recovery); the arrays themselves depend on the set alone.
    """
    vs = _checked_vertices(inst, sol)
    return rebuild_arrays(inst, vs) == inst.arrays


def recovered_order(inst: Instance, sol) -> tuple[int, ...]:
    """The original choice order implied by the instance's permutation."""
    vs = _checked_vertices(inst, sol)
    return tuple(vs[r - 1] for r in inst.perm)


def _query_specs(inst: Instance, specs):
    if inst.variant == "masked":
        raise UnqueryableVariant(
            "masked instances fold the filters; individual edges cannot be queried"
        )
    if inst.variant in ("basic", "multi"):
        return inst.specs
    if specs is None:
        raise UnqueryableVariant(
            "derived instances need the generator's spec context to be queried"
        )
    if len(specs) != len(inst.arrays):
        raise OutOfRange("spec context size disagrees with instance arrays")
    return tuple(specs)


def implicit_edge_query(inst: Instance, u: int, v: int, specs=None) -> bool:
    """Is edge (u, v) present in the succinct graph the arrays encode?

    True whenever every filter has a one at the edge's hashed position;
    clique edges always answer true, other pairs may collide into false
    positives.
    """
    qspecs = _query_specs(inst, specs)
    x = encode_edge(u, v, inst.n)
    for spec, arr in zip(qspecs, inst.arrays):
        if not arr.get(hash_value(spec, x)):
            return False
    return True


def edge_query_batch(inst: Instance, codes, specs=None):
    """Vector form of implicit_edge_query over encoded pair codes."""
    qspecs = _query_specs(inst, specs)
    arr_codes = np.asarray(codes, dtype=np.uint64)
    ans = np.ones(arr_codes.shape[0], dtype=bool)
    for spec, arr in zip(qspecs, inst.arrays):
        idxs = _kernels.hash_batch(spec, arr_codes)
        words = _kernels.array_words(arr)
        ans &= _kernels.test_bits(words, idxs).astype(bool)
    return ans


def array_densities(inst: Instance) -> list:
    """Per-array one-bit fraction (the alpha each filter realizes)."""
    return [arr.density() for arr in inst.arrays]
