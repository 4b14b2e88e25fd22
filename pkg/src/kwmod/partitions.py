"""Partitions, partition pairs of (m|n), and the ordered merge of their rows."""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Parity",
    "NotWeaklyDecreasing",
    "InvalidPart",
    "Partition",
    "PartitionPair",
    "MergedShape",
    "validate_partition",
    "parse_partition",
    "merge_shapes",
    "centralizer_dims_formula",
    "partitions_of",
    "partition_pairs",
    "all_partition_pairs",
]


class Parity(IntEnum):
    EVEN = 0
    ODD = 1

    @property
    def sign(self) -> str:
        return "+" if self is Parity.EVEN else "-"

    def __str__(self) -> str:
        return "even" if self is Parity.EVEN else "odd"


class NotWeaklyDecreasing(ValueError):
    pass


class InvalidPart(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        for x in parts:
            if x < 1:
                raise InvalidPart(f"parts must be positive, got {x}")
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise NotWeaklyDecreasing(f"{parts} is not weakly decreasing")
        object.__setattr__(self, "parts", parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        return self.parts[i]

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))


def validate_partition(parts: Iterable[int]) -> Partition:
    return Partition(tuple(parts))


def parse_partition(text: str) -> Partition:
    """Parse ``"3,1"``; the empty string is the empty partition."""
    text = text.strip()
    if not text:
        return Partition(())
    try:
        parts = tuple(int(tok) for tok in text.split(","))
    except ValueError as exc:
        raise InvalidPart(f"cannot parse partition {text!r}") from exc
    return Partition(parts)


@dataclass(frozen=True)
class PartitionPair:
    """Jordan type ``(r, q)`` of an even nilpotent in gl(m|n)."""

    r: Partition
    q: Partition

    def __post_init__(self):
        if not isinstance(self.r, Partition):
            object.__setattr__(self, "r", Partition(tuple(self.r)))
        if not isinstance(self.q, Partition):
            object.__setattr__(self, "q", Partition(tuple(self.q)))

    @classmethod
    def of(cls, r: Sequence[int], q: Sequence[int]) -> "PartitionPair":
        return cls(Partition(tuple(r)), Partition(tuple(q)))

    @property
    def m(self) -> int:
        return self.r.total

    @property
    def n(self) -> int:
        return self.q.total

    def __str__(self) -> str:
        return f"({self.r}|{self.q})"


@dataclass(frozen=True)
class MergedShape:
    """Rows of the merged partition, bottom row first."""

    rows: tuple[tuple[int, Parity], ...]

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(length for length, _ in self.rows)

    def __len__(self) -> int:
        return len(self.rows)


def merge_shapes(r: Partition, q: Partition) -> MergedShape:
    # At equal length the odd row sits lower (gets the smaller row index).
    rows = [(x, Parity.EVEN) for x in r] + [(x, Parity.ODD) for x in q]
    rows.sort(key=lambda row: (-row[0], -int(row[1])))
    return MergedShape(tuple(rows))


def centralizer_dims_formula(pp: PartitionPair) -> tuple[int, int]:
    """Superdimension of the centralizer of ``e_{r,q}`` in gl(m|n)."""
    r, q = pp.r.parts, pp.q.parts
    even = sum(min(a, b) for a in r for b in r) + sum(min(a, b) for a in q for b in q)
    odd = 2 * sum(min(a, b) for a in r for b in q)
    return even, odd


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions_of(n: int) -> list[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return [Partition(parts) for parts in _partitions(n, n)]


def partition_pairs(m: int, n: int) -> list[PartitionPair]:
    return [PartitionPair(r, q) for r in partitions_of(m) for q in partitions_of(n)]


def all_partition_pairs(max_size: int) -> Iterator[PartitionPair]:
    """Every partition pair of (m|n) with ``1 <= m + n <= max_size``."""
    for size in range(1, max_size + 1):
        for m in range(size, -1, -1):
            yield from partition_pairs(m, size - m)
