"""Boolean functions f: {0,1}^n -> {0,1} materialized as full truth tables.

A table entry at index v is the value of f on the bit string encoding v,
which makes oracle application a pure table lookup and lets small-n tests
verify claims by scanning the whole table.  Query counting is opt-in per
instance so shared functions are not perturbed by bookkeeping reads.
"""

from __future__ import annotations

from typing import Iterable, Optional

import numpy as np

from .bitstring import BitString, basis_e, basis_k
from .errors import CapacityError, DimensionMismatchError

__all__ = [
    "MAX_ARITY",
    "BooleanFunction",
    "bv_function",
    "pi_function",
    "two_key_function",
    "classical_bv_solve",
    "classical_pi_solve",
    "recover_key_if_bv",
    "load_table",
    "dump_table",
]

# Tables are dense: 2**24 entries is 16 MB of uint8 and the practical ceiling.
MAX_ARITY = 24


def _parity_of(values: np.ndarray) -> np.ndarray:
    """Per-element popcount parity of a uint64 array."""
    return (np.bitwise_count(values) & 1).astype(np.uint8)


class BooleanFunction:
    """A function given by its explicit truth table.

    ``table[v]`` is the value on the bit string whose big-endian encoding is v.
    When ``counting`` is enabled, every ``evaluate`` call increments
    ``query_count``; kernel code reads ``table`` directly and never counts.
    """

    __slots__ = ("arity", "table", "counting", "query_count")

    def __init__(
        self,
        table: Iterable[int] | np.ndarray,
        *,
        counting: bool = False,
        arity_limit: int = MAX_ARITY,
    ) -> None:
        arr = np.asarray(table, dtype=np.uint8)
        if arr.ndim != 1 or arr.size < 2 or (arr.size & (arr.size - 1)) != 0:
            raise ValueError(f"table length must be a power of two >= 2, got {arr.size}")
        if not np.all(arr <= 1):
            raise ValueError("table entries must be 0 or 1")
        arity = arr.size.bit_length() - 1
        if arity > arity_limit:
            raise CapacityError(f"arity {arity} exceeds limit {arity_limit}")
        self.arity = arity
        self.table = arr
        self.counting = counting
        self.query_count = 0

    def evaluate(self, x: BitString) -> int:
        """Value on x; counts as one query when counting is enabled."""
        if len(x) != self.arity:
            raise DimensionMismatchError(
                f"arity mismatch: function takes {self.arity} bits, got {len(x)}"
            )
        if self.counting:
            self.query_count += 1
        return int(self.table[x.to_int()])

    def with_counting(self) -> "BooleanFunction":
        """Fresh counting-enabled view sharing this table."""
        return BooleanFunction(self.table, counting=True)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        return self.arity == other.arity and bool(np.array_equal(self.table, other.table))

    def __repr__(self) -> str:
        bits = "".join(str(int(b)) for b in self.table[:32])
        tail = "..." if self.table.size > 32 else ""
        return f"BooleanFunction(arity={self.arity}, table={bits}{tail})"


def bv_function(gamma: BitString) -> BooleanFunction:
    """f(x) = dot(x, gamma): the parity of x masked by the hidden string."""
    n = len(gamma)
    g = gamma.to_int()
    indices = np.arange(1 << n, dtype=np.uint64)
    return BooleanFunction(_parity_of(indices & np.uint64(g)))


def pi_function(gamma: BitString) -> BooleanFunction:
    """f(x) = dot(x XOR gamma, gamma): the key-shifted masked parity."""
    n = len(gamma)
    g = np.uint64(gamma.to_int())
    indices = np.arange(1 << n, dtype=np.uint64)
    return BooleanFunction(_parity_of((indices ^ g) & g))


def two_key_function(gamma: BitString, lam: BitString) -> BooleanFunction:
    """f(x) = dot(x XOR gamma, lam): shift by one key, mask by another."""
    if len(gamma) != len(lam):
        raise DimensionMismatchError(
            f"key length mismatch: {len(gamma)} vs {len(lam)}"
        )
    g = np.uint64(gamma.to_int())
    l = np.uint64(lam.to_int())
    indices = np.arange(1 << len(gamma), dtype=np.uint64)
    return BooleanFunction(_parity_of((indices ^ g) & l))


def classical_bv_solve(f: BooleanFunction) -> BitString:
    """Recover the hidden string of a masked-parity function in exactly n queries.

    Queries the unit vectors e_j; bit j of the answer is f(e_j).  The promise
    that f is of that form is not checked.
    """
    n = f.arity
    return BitString(tuple(f.evaluate(basis_e(n, j)) for j in range(n)))


def classical_pi_solve(f: BooleanFunction) -> BitString:
    """Recover the hidden string of a key-shifted parity function in n queries.

    Queries the complemented unit vectors (all ones except position j); each
    read returns bit j of the key directly.  The promise is not checked.
    """
    n = f.arity
    return BitString(tuple(f.evaluate(basis_k(n, j)) for j in range(n)))


def recover_key_if_bv(f: BooleanFunction) -> Optional[BitString]:
    """Full-table check of the masked-parity promise.

    Reads the candidate key off the unit vectors, then compares all 2**n table
    entries; returns the key only if the whole table matches.
    """
    candidate = BitString(
        tuple(int(f.table[basis_e(f.arity, j).to_int()]) for j in range(f.arity))
    )
    if np.array_equal(f.table, bv_function(candidate).table):
        return candidate
    return None


def load_table(text: str) -> BooleanFunction:
    """Parse the two-line truth-table format.

    Line 1 is ``arity n``; line 2 is the 2**n table bits as one contiguous
    0/1 string in index order.  Anything else is rejected.
    """
    lines = [line for line in text.splitlines() if line.strip()]
    if len(lines) != 2:
        raise ValueError(f"expected 2 non-empty lines, got {len(lines)}")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "arity" or not head[1].isdigit():
        raise ValueError(f"bad header line: {lines[0]!r}")
    n = int(head[1])
    if n < 1:
        raise ValueError("arity must be >= 1")
    bits = lines[1].strip()
    if len(bits) != (1 << n):
        raise ValueError(f"table line has {len(bits)} bits, expected {1 << n}")
    if any(c not in "01" for c in bits):
        raise ValueError("table line must contain only 0 and 1")
    return BooleanFunction([1 if c == "1" else 0 for c in bits])


def dump_table(f: BooleanFunction) -> str:
    """Render the two-line truth-table format."""
    bits = "".join(str(int(b)) for b in f.table)
    return f"arity {f.arity}\n{bits}\n"
