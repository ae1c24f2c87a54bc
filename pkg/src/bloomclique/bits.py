"""Fixed-length bit arrays with 1-based indexing.

Bit j lives in byte (j-1)//8 at in-byte position (j-1)%8, least significant
bit first, so the whole payload reads as a little-endian integer whose bit
(j-1) is array bit j.  Trailing pad bits in the last byte are always zero.
Hex form is two lowercase digits per byte, bytes in index order.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import IndexOutOfRange, LengthMismatch


class BitArray:
    """Immutable array of m bits, indexed 1..m."""

    __slots__ = ("m", "_val")

    def __init__(self, m: int, _val: int = 0):
        if m < 1:
            raise IndexOutOfRange(f"array length {m} must be positive")
        self.m = m
        self._val = _val

    @classmethod
    def zeros(cls, m: int) -> "BitArray":
        return cls(m)

    @classmethod
    def from_int(cls, m: int, value: int) -> "BitArray":
        """Bits taken from value; bit j of the array is bit (j-1) of value."""
        if value < 0 or value >> m:
            raise IndexOutOfRange(f"value does not fit in {m} bits")
        return cls(m, value)

    @classmethod
    def from_indices(cls, m: int, indices) -> "BitArray":
        v = 0
        for j in indices:
            j = int(j)  # numpy ints would overflow the shift
            if not 1 <= j <= m:
                raise IndexOutOfRange(f"bit index {j} outside [1, {m}]")
            v |= 1 << (j - 1)
        return cls(m, v)

    @classmethod
    def from_bytes(cls, m: int, payload: bytes) -> "BitArray":
        if len(payload) != (m + 7) // 8:
            raise LengthMismatch(
                f"{len(payload)} bytes cannot hold exactly {m} bits"
            )
        v = int.from_bytes(payload, "little")
        if v >> m:
            raise IndexOutOfRange("pad bits beyond m must be zero")
        return cls(m, v)

    @classmethod
    def from_hex(cls, m: int, text: str) -> "BitArray":
        if text != text.lower():
            raise IndexOutOfRange("hex payload must be lowercase")
        return cls.from_bytes(m, bytes.fromhex(text))

    def to_bytes(self) -> bytes:
        return self._val.to_bytes((self.m + 7) // 8, "little")

    def to_hex(self) -> str:
        return self.to_bytes().hex()

    def to_int(self) -> int:
        return self._val

    def get(self, j: int) -> int:
        if not 1 <= j <= self.m:
            raise IndexOutOfRange(f"bit index {j} outside [1, {self.m}]")
        return (self._val >> (j - 1)) & 1

    def set(self, j: int) -> "BitArray":
        """Copy with bit j set to one."""
        if not 1 <= j <= self.m:
            raise IndexOutOfRange(f"bit index {j} outside [1, {self.m}]")
        return BitArray(self.m, self._val | (1 << (j - 1)))

    def xor(self, other: "BitArray") -> "BitArray":
        if self.m != other.m:
            raise LengthMismatch(f"lengths differ: {self.m} vs {other.m}")
        return BitArray(self.m, self._val ^ other._val)

    def popcount(self) -> int:
        return self._val.bit_count()

    def density(self) -> Fraction:
        return Fraction(self.popcount(), self.m)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitArray)
            and self.m == other.m
            and self._val == other._val
        )

    def __hash__(self) -> int:
        return hash((self.m, self._val))

    def __len__(self) -> int:
        return self.m

    def __repr__(self) -> str:
        return f"BitArray(m={self.m}, hex={self.to_hex()!r})"
