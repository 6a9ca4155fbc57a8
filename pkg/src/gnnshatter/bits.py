"""Bit vectors ``x = (x_1, ..., x_b)`` indexing the classifier families."""
from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass

DEFAULT_MAX_BITS = 64


@dataclass(frozen=True)
class BitVector:
    bits: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(v) for v in self.bits)
        if not bits:
            raise ValueError("bit vector needs at least one bit")
        if any(v not in (0, 1) for v in bits):
            raise ValueError(f"entries must be 0 or 1: {bits}")
        object.__setattr__(self, "bits", bits)

    @property
    def b(self) -> int:
        return len(self.bits)

    def bit(self, j: int) -> int:
        """1-based access; positions past ``b`` read as 0."""
        if j < 1:
            raise IndexError(f"bit positions start at 1, got {j}")
        return self.bits[j - 1] if j <= self.b else 0

    def to_int(self) -> int:
        return sum(v << k for k, v in enumerate(self.bits))

    @classmethod
    def from_int(cls, value: int, b: int) -> BitVector:
        if not 0 <= value < 1 << b:
            raise ValueError(f"{value} does not fit in {b} bits")
        return cls(tuple((value >> k) & 1 for k in range(b)))

    @classmethod
    def parse(cls, text: str) -> BitVector:
        """``"101"`` means x_1=1, x_2=0, x_3=1."""
        text = text.strip()
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"not a bit string: {text!r}")
        return cls(tuple(int(c) for c in text))

    def __str__(self) -> str:
        return "".join(map(str, self.bits))


def all_bitvectors(b: int) -> Iterator[BitVector]:
    """All of {0,1}^b, ordered by :meth:`BitVector.to_int`."""
    for value in range(1 << b):
        yield BitVector.from_int(value, b)


def check_bits(b: int, cap: int = DEFAULT_MAX_BITS) -> None:
    if not 1 <= b <= cap:
        raise ValueError(f"b must lie in [1, {cap}], got {b}")
