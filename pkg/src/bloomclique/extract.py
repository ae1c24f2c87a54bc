"""Deterministic extraction of cliques and hash parameters from input bits.

A function input is an ordinary bit string.  Its leading bits choose c
distinct vertices out of n via a mixed-radix decomposition of one big
integer; the remaining bits (for the variants that need them) decode hash
parameters.  Everything here is exact and reversible bookkeeping: the same
string always yields the same clique, permutation, and specs.
"""

from __future__ import annotations

from bisect import insort
from dataclasses import dataclass

from .errors import NotStrictlyOrdered, OutOfRange, StringTooShort
from .hashing import BitReader, HashSpec, read_spec, spec_stream_bits
from .params import ParamSet, falling_factorial

VARIANTS = ("basic", "multi", "derived", "masked")


@dataclass(frozen=True)
class RandomString:
    """Input bits; consumed MSB-first within each byte, bytes in order."""

    data: bytes
    length: int  # usable bits, counted from the front

    def __post_init__(self):
        if not 0 <= self.length <= 8 * len(self.data):
            raise OutOfRange(
                f"length {self.length} exceeds {8 * len(self.data)} stored bits"
            )

    @classmethod
    def from_bytes(cls, data: bytes, length: int | None = None) -> "RandomString":
        return cls(data=bytes(data), length=8 * len(data) if length is None else length)

    @classmethod
    def from_hex(cls, text: str) -> "RandomString":
        if text != text.lower():
            raise OutOfRange("hex input must be lowercase")
        return cls.from_bytes(bytes.fromhex(text))

    def to_hex(self) -> str:
        return self.data.hex()

    def reader(self, offset: int = 0) -> BitReader:
        value = int.from_bytes(self.data, "big") >> (8 * len(self.data) - self.length)
        r = BitReader(value, self.length)
        if offset:
            r.read(offset)
        return r


@dataclass(frozen=True)
class CliqueSeed:
    """The extracted clique: ascending vertices plus the choice order.

    perm[i] is the rank (1-based) of the i-th chosen vertex within the
    sorted vertex set, so chosen_i = vertices[perm[i]-1].  Only the set
    determines the output arrays; perm records how the input spelled it.
    """

    vertices: tuple[int, ...]
    perm: tuple[int, ...]

    def __post_init__(self):
        if any(
            self.vertices[i] >= self.vertices[i + 1]
            for i in range(len(self.vertices) - 1)
        ):
            raise NotStrictlyOrdered("vertices must be strictly ascending")
        if sorted(self.perm) != list(range(1, len(self.vertices) + 1)):
            raise OutOfRange("perm must be a bijection on 1..c")

    def chosen_order(self) -> tuple[int, ...]:
        return tuple(self.vertices[r - 1] for r in self.perm)


def vertex_field_bits(n: int, c: int) -> int:
    """Bits read for the vertex choice: ceil(log2 of the falling factorial)."""
    return (falling_factorial(n, c) - 1).bit_length()


def extract_distinct_vertices(rs: RandomString, n: int, c: int | None = None,
                              offset: int = 0) -> CliqueSeed:
    """Map the leading bits to c distinct vertices of [1, n].

    The bits form an integer I, reduced mod the falling factorial so every
    input is valid, then peeled into mixed-radix digits (n, n-1, ...); digit
    i selects and removes the (d_i+1)-th smallest remaining vertex.
    """
    if n < 2 or (n & (n - 1)) != 0:
        raise OutOfRange(f"n={n} must be a power of two")
    if c is None:
        c = n.bit_length() - 1
    F = falling_factorial(n, c)
    I = rs.reader(offset).read((F - 1).bit_length()) % F

    digits = [0] * c
    for i in range(c - 1, -1, -1):
        radix = n - i
        digits[i] = I % radix
        I //= radix

    # order-statistic walk over the removed set; [1, n] is never
    # materialized, so n = 2**64 works
    chosen: list[int] = []
    removed: list[int] = []
    for d in digits:
        v = d + 1
        for r in removed:
            if r <= v:
                v += 1
            else:
                break
        chosen.append(v)
        insort(removed, v)

    vertices = tuple(sorted(chosen))
    rank = {v: i + 1 for i, v in enumerate(vertices)}
    perm = tuple(rank[v] for v in chosen)
    return CliqueSeed(vertices=vertices, perm=perm)


def extract_hash_params(rs: RandomString, offset: int, kind: str, m: int,
                        p: int, count: int, c: int,
                        poly_degree: int | None = None) -> tuple[HashSpec, ...]:
    """Decode `count` hash specs starting at bit `offset` of the string."""
    if poly_degree is None:
        poly_degree = c
    reader = rs.reader(offset)
    return tuple(
        read_spec(reader, kind, m, p, c, poly_degree) for _ in range(count)
    )


def required_bits(params: ParamSet, variant: str, kind: str,
                  poly_degree: int | None = None) -> int:
    """Exact input length a variant consumes: vertex field plus spec fields."""
    if variant not in VARIANTS:
        raise OutOfRange(f"unknown variant {variant!r}")
    if poly_degree is None:
        poly_degree = params.c
    bits = vertex_field_bits(params.n, params.c)
    if variant == "basic":
        bits += spec_stream_bits(kind, params.p_basic, params.c, poly_degree)
    elif variant == "multi":
        bits += params.f_multi * spec_stream_bits(
            kind, params.p_filter, params.c, poly_degree
        )
    # derived and masked recover their specs from the clique itself
    return bits


def seed_from_vertices(vertices, n: int) -> CliqueSeed:
    """Seed with identity choice order; for solutions given as bare sets."""
    vs = tuple(vertices)
    for v in vs:
        if not 1 <= v <= n:
            raise OutOfRange(f"vertex {v} outside [1, {n}]")
    return CliqueSeed(vertices=vs, perm=tuple(range(1, len(vs) + 1)))
