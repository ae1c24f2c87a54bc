"""Universal hash families over encoded edges, plus parameter decoding.

Three families share the output contract: values land in [1, m].

* Carter-Wegman affine: h(x) = (((a*x + b) mod p) mod m) + 1 with p prime > m.
* Toeplitz over GF(2): the first row r1 is a 2c-bit vector, row i is r1
  rotated right i-1 times, and ceil(log2 m) inner products form an integer
  t (first row contributes the most significant bit); h(x) = (t mod m) + 1.
* Polynomial: h(x) = (((sum a_i x^i) mod p) mod m) + 1 with k coefficients.

Parameter decoding from a bit stream is defined once here and reused both
for reading fresh randomness and for re-deriving parameters from clique
edge triples.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    NotEnoughTriples,
    NotStrictlyOrdered,
    OutOfRange,
    StringTooShort,
)
from .params import is_prime

HASH_KINDS = ("cw", "tp", "poly")


def encode_edge(u: int, v: int, n: int) -> int:
    """Injective pair code (u-1) + (v-1)*n for 1 <= u < v <= n."""
    if not (1 <= u <= n and 1 <= v <= n):
        raise OutOfRange(f"edge ({u},{v}) outside [1,{n}]")
    if u >= v:
        raise NotStrictlyOrdered(f"edge ({u},{v}) needs u < v")
    return (u - 1) + (v - 1) * n


def decode_edge(code: int, n: int) -> tuple[int, int]:
    u = code % n + 1
    v = code // n + 1
    if u >= v or v > n:
        raise OutOfRange(f"code {code} is not an edge code for n={n}")
    return u, v


def param_bits(p: int) -> int:
    """Bits read per hash parameter: ceil(log2 p)."""
    return (p - 1).bit_length()


@dataclass(frozen=True)
class CWHashSpec:
    a: int
    b: int
    p: int
    m: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise OutOfRange(f"p={self.p} is not prime")
        if self.p <= self.m:
            raise OutOfRange(f"p={self.p} must exceed m={self.m}")
        if not 1 <= self.a <= self.p - 1:
            raise OutOfRange(f"a={self.a} outside [1, p-1]")
        if not 0 <= self.b <= self.p - 1:
            raise OutOfRange(f"b={self.b} outside [0, p-1]")


@dataclass(frozen=True)
class ToeplitzHashSpec:
    r1: int  # first row, 2c bits, nonzero
    c: int
    m: int

    def __post_init__(self):
        width = 2 * self.c
        if self.r1 == 0:
            raise OutOfRange("first row must be nonzero")
        if self.r1 >> width:
            raise OutOfRange(f"first row wider than {width} bits")
        if (1 << width) < self.m:
            raise OutOfRange(f"2c={width} bits cannot address m={self.m}")

    @property
    def rows(self) -> int:
        return (self.m - 1).bit_length()

    def row_masks(self) -> list[int]:
        width = 2 * self.c
        r = self.r1
        out = []
        for _ in range(self.rows):
            out.append(r)
            r = (r >> 1) | ((r & 1) << (width - 1))
        return out


@dataclass(frozen=True)
class PolyHashSpec:
    coeffs: tuple[int, ...]  # a_0 .. a_{k-1}
    p: int
    m: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise OutOfRange(f"p={self.p} is not prime")
        if self.p <= self.m:
            raise OutOfRange(f"p={self.p} must exceed m={self.m}")
        if len(self.coeffs) < 1:
            raise OutOfRange("need at least one coefficient")
        for a in self.coeffs:
            if not 0 <= a < self.p:
                raise OutOfRange(f"coefficient {a} outside [0, p)")

    @property
    def k(self) -> int:
        return len(self.coeffs)


HashSpec = CWHashSpec | ToeplitzHashSpec | PolyHashSpec


def cw_hash(spec: CWHashSpec, x: int) -> int:
    return ((spec.a * x + spec.b) % spec.p) % spec.m + 1


def toeplitz_hash(spec: ToeplitzHashSpec, x: int) -> int:
    if x >> (2 * spec.c):
        raise OutOfRange(f"input wider than {2 * spec.c} bits")
    t = 0
    for mask in spec.row_masks():
        t = (t << 1) | ((mask & x).bit_count() & 1)
    return t % spec.m + 1


def poly_hash(spec: PolyHashSpec, x: int) -> int:
    acc = 0
    for a in reversed(spec.coeffs):
        acc = (acc * x + a) % spec.p
    return acc % spec.m + 1


def hash_value(spec: HashSpec, x: int) -> int:
    if isinstance(spec, CWHashSpec):
        return cw_hash(spec, x)
    if isinstance(spec, ToeplitzHashSpec):
        return toeplitz_hash(spec, x)
    return poly_hash(spec, x)


def kind_of(spec: HashSpec) -> str:
    if isinstance(spec, CWHashSpec):
        return "cw"
    if isinstance(spec, ToeplitzHashSpec):
        return "tp"
    return "poly"


class BitReader:
    """MSB-first cursor over a bit string held as an integer."""

    def __init__(self, value: int, nbits: int):
        self.value = value
        self.nbits = nbits
        self.pos = 0

    def remaining(self) -> int:
        return self.nbits - self.pos

    def read(self, k: int) -> int:
        if k > self.remaining():
            raise StringTooShort(
                f"needed {k} bits, only {self.remaining()} left"
            )
        shift = self.nbits - self.pos - k
        self.pos += k
        return (self.value >> shift) & ((1 << k) - 1)


def spec_stream_bits(kind: str, p: int, c: int, poly_degree: int) -> int:
    """Bits one spec consumes from a parameter stream."""
    if kind == "cw":
        return 2 * param_bits(p)
    if kind == "tp":
        return 2 * c
    if kind == "poly":
        return poly_degree * param_bits(p)
    raise OutOfRange(f"unknown hash kind {kind!r}")


def read_spec(reader: BitReader, kind: str, m: int, p: int, c: int,
              poly_degree: int) -> HashSpec:
    """Decode one spec from the stream.

    Carter-Wegman reads ceil(log2 p) bits for each of A and B and maps
    a = (A mod (p-1)) + 1, b = B mod p, so a is never zero.  Toeplitz reads
    2c bits and replaces an all-zero row with ...0001.  Polynomial reads
    poly_degree coefficient fields of ceil(log2 p) bits, each reduced mod p.
    """
    if kind == "cw":
        w = param_bits(p)
        a = reader.read(w) % (p - 1) + 1
        b = reader.read(w) % p
        return CWHashSpec(a=a, b=b, p=p, m=m)
    if kind == "tp":
        r1 = reader.read(2 * c)
        if r1 == 0:
            r1 = 1
        return ToeplitzHashSpec(r1=r1, c=c, m=m)
    if kind == "poly":
        w = param_bits(p)
        coeffs = tuple(reader.read(w) % p for _ in range(poly_degree))
        return PolyHashSpec(coeffs=coeffs, p=p, m=m)
    raise OutOfRange(f"unknown hash kind {kind!r}")


def derive_specs_from_clique(edge_codes, c: int, kind: str, m: int, p: int,
                             count: int, poly_degree: int | None = None
                             ) -> tuple[HashSpec, ...]:
    """Re-derive hash parameters from the clique's own edges.

    The ascending edge codes are taken three at a time; each consecutive
    disjoint triple XORs to one 2c-bit word.  The words concatenate into a
    parameter stream decoded exactly like fresh randomness.  Edges are a
    pure function of the vertex set, so any party holding the clique
    recovers identical specs.
    """
    codes = list(edge_codes)
    if any(codes[i] >= codes[i + 1] for i in range(len(codes) - 1)):
        raise NotStrictlyOrdered("edge codes must be strictly ascending")
    if poly_degree is None:
        poly_degree = c
    width = 2 * c
    words = []
    for j in range(len(codes) // 3):
        e0, e1, e2 = codes[3 * j: 3 * j + 3]
        words.append(e0 ^ e1 ^ e2)
    stream = 0
    for w in words:
        stream = (stream << width) | w
    reader = BitReader(stream, width * len(words))
    need = count * spec_stream_bits(kind, p, c, poly_degree)
    if need > reader.nbits:
        raise NotEnoughTriples(
            f"{count} {kind} specs need {need} bits, triples supply {reader.nbits}"
        )
    return tuple(
        read_spec(reader, kind, m, p, c, poly_degree) for _ in range(count)
    )
