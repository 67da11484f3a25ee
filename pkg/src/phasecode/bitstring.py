"""Bit-string helpers over computational basis labels.

Bit 0 is the least significant bit and corresponds to the rightmost digit of a
ket label, so ``|0...01>`` is the integer 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_WIDTH = 24


@dataclass(frozen=True)
class BitString:
    value: int
    width: int

    def __post_init__(self) -> None:
        if not 1 <= self.width <= MAX_WIDTH:
            raise ValueError(f"width must be in [1, {MAX_WIDTH}], got {self.width}")
        if not 0 <= self.value < (1 << self.width):
            raise ValueError(f"value {self.value} does not fit in {self.width} bits")

    def __str__(self) -> str:
        return format(self.value, f"0{self.width}b")

    @classmethod
    def from_label(cls, label: str) -> BitString:
        """Parse a ket label such as ``"000101"`` (rightmost digit is bit 0)."""
        return cls(int(label, 2), len(label))


def _same_width(a: BitString, b: BitString) -> None:
    if a.width != b.width:
        raise ValueError(f"width mismatch: {a.width} != {b.width}")


def popcount(x: int) -> int:
    return int(x).bit_count()


def hamming_weight(b: BitString) -> int:
    return popcount(b.value)


def hamming_distance(a: BitString, b: BitString) -> int:
    _same_width(a, b)
    return popcount(a.value ^ b.value)


def complement(b: BitString) -> BitString:
    return BitString(~b.value & ((1 << b.width) - 1), b.width)


def bit_and(a: BitString, b: BitString) -> BitString:
    _same_width(a, b)
    return BitString(a.value & b.value, a.width)


def jump_selector(n: BitString, b: BitString) -> bool:
    """True iff ``n`` is nonzero and every set bit of ``n`` is also set in ``b``.

    This is the step-function product theta(n & b) * (1 - theta(n & ~b)) that
    picks out the basis states reachable by jump pattern ``n``.
    """
    _same_width(n, b)
    return (n.value & b.value) != 0 and (n.value & complement(b).value) == 0


def set_bits(x: int) -> list[int]:
    """Indices of the set bits of ``x`` in ascending order."""
    out = []
    i = 0
    while x:
        if x & 1:
            out.append(i)
        x >>= 1
        i += 1
    return out


# Vectorised forms used on whole basis index ranges.


def popcount_array(x: np.ndarray) -> np.ndarray:
    return np.bitwise_count(np.asarray(x, dtype=np.uint64)).astype(np.int64)


def distance_table(width: int) -> np.ndarray:
    """Matrix of pairwise Hamming distances between all ``2**width`` labels."""
    idx = np.arange(1 << width, dtype=np.uint64)
    return popcount_array(idx[:, None] ^ idx[None, :])


def selector_mask(n: int, width: int) -> np.ndarray:
    """Boolean mask over basis labels ``b`` with ``jump_selector(n, b)``."""
    if n == 0:
        return np.zeros(1 << width, dtype=bool)
    idx = np.arange(1 << width, dtype=np.int64)
    return (idx & n) == n
