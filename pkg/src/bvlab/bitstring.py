"""Fixed-length bit vectors over GF(2) with XOR addition and parity inner product.

Bits are displayed left to right, bit 0 first.  The integer encoding is
big-endian in display order (bit 0 is the most significant), so ``str()``
output and amplitude indices agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import DimensionMismatchError

__all__ = [
    "BitString",
    "basis_e",
    "basis_k",
    "all_bitstrings",
]


@dataclass(frozen=True)
class BitString:
    """Immutable vector of n bits; operations return fresh values."""

    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.bits) < 1:
            raise ValueError("BitString must have length >= 1")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"bits must be 0 or 1, got {self.bits!r}")

    @classmethod
    def of(cls, bits: Iterable[int]) -> "BitString":
        return cls(tuple(int(b) for b in bits))

    @classmethod
    def parse(cls, text: str) -> "BitString":
        """Parse "101"-style text; rejects empty strings and non-binary characters."""
        if not text or any(c not in "01" for c in text):
            raise ValueError(f"not a bit string: {text!r}")
        return cls(tuple(1 if c == "1" else 0 for c in text))

    @classmethod
    def zeros(cls, n: int) -> "BitString":
        return cls((0,) * n)

    @classmethod
    def ones(cls, n: int) -> "BitString":
        return cls((1,) * n)

    @classmethod
    def from_int(cls, n: int, value: int) -> "BitString":
        """Decode the big-endian integer encoding; requires 0 <= value < 2**n."""
        if n < 1:
            raise ValueError("length must be >= 1")
        if not 0 <= value < (1 << n):
            raise ValueError(f"value {value} out of range for {n} bits")
        return cls(tuple((value >> (n - 1 - j)) & 1 for j in range(n)))

    def to_int(self) -> int:
        """Big-endian integer encoding (bit 0 most significant)."""
        v = 0
        for b in self.bits:
            v = (v << 1) | b
        return v

    def __len__(self) -> int:
        return len(self.bits)

    def __getitem__(self, j: int) -> int:
        return self.bits[j]

    def __iter__(self) -> Iterator[int]:
        return iter(self.bits)

    def __str__(self) -> str:
        return "".join("1" if b else "0" for b in self.bits)

    def __int__(self) -> int:
        return self.to_int()

    def __xor__(self, other: "BitString") -> "BitString":
        """Bitwise XOR; this is the vector addition of the GF(2) space."""
        self._check_same_length(other)
        return BitString(tuple(a ^ b for a, b in zip(self.bits, other.bits)))

    def dot(self, other: "BitString") -> int:
        """Parity inner product: XOR of pairwise ANDs, one bit."""
        self._check_same_length(other)
        acc = 0
        for a, b in zip(self.bits, other.bits):
            acc ^= a & b
        return acc

    def complement(self) -> "BitString":
        """Flip every bit."""
        return BitString(tuple(1 - b for b in self.bits))

    def __invert__(self) -> "BitString":
        return self.complement()

    def _check_same_length(self, other: "BitString") -> None:
        if len(self.bits) != len(other.bits):
            raise DimensionMismatchError(
                f"length mismatch: {len(self.bits)} vs {len(other.bits)}"
            )


def basis_e(n: int, j: int) -> BitString:
    """Unit vector with its 1 at display position j, so dot(e_j, g) reads bit j of g."""
    if not 0 <= j < n:
        raise IndexError(f"index {j} out of range for length {n}")
    return BitString(tuple(1 if i == j else 0 for i in range(n)))


def basis_k(n: int, j: int) -> BitString:
    """Complement of basis_e(n, j): all ones except a 0 at position j."""
    if not 0 <= j < n:
        raise IndexError(f"index {j} out of range for length {n}")
    return BitString(tuple(0 if i == j else 1 for i in range(n)))


def all_bitstrings(n: int) -> Iterator[BitString]:
    """Yield every length-n bit string in increasing integer order."""
    for v in range(1 << n):
        yield BitString.from_int(n, v)
