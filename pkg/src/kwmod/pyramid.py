"""Dynkin, shifted and Young pyramids for gl(m|n).

Rows are numbered from 1 at the bottom.  A box is identified by a
:class:`BoxId`; its column is the integer first coordinate of its centre,
so boxes in a row sit at ``start, start + 2, ..., start + 2 * (length - 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

import numpy as np

from .partitions import MergedShape, Parity, PartitionPair, merge_shapes

__all__ = [
    "BoxId",
    "PyramidRow",
    "Pyramid",
    "ShapeViolation",
    "UnknownBox",
    "dynkin_pyramid",
    "shift_pyramid",
    "young_pyramid",
    "degree",
    "is_even_pyramid",
    "render_ascii",
    "render_svg",
]


class ShapeViolation(ValueError):
    pass


class UnknownBox(KeyError):
    pass


@dataclass(frozen=True, order=True)
class BoxId:
    parity: Parity
    index: int

    def __post_init__(self):
        object.__setattr__(self, "parity", Parity(self.parity))
        if self.index < 1:
            raise ValueError("box indices start at 1")

    @classmethod
    def even(cls, k: int) -> "BoxId":
        return cls(Parity.EVEN, k)

    @classmethod
    def odd(cls, k: int) -> "BoxId":
        return cls(Parity.ODD, k)

    @classmethod
    def parse(cls, text: str) -> "BoxId":
        text = text.strip()
        if text.startswith("b"):
            return cls(Parity.EVEN, int(text[1:]))
        return cls(Parity.ODD, int(text))

    def flat(self, m: int) -> int:
        """Position in the ordered index set 1̄ < ... < m̄ < 1 < ... < n."""
        return self.index - 1 if self.parity is Parity.EVEN else m + self.index - 1

    @classmethod
    def from_flat(cls, a: int, m: int) -> "BoxId":
        return cls(Parity.EVEN, a + 1) if a < m else cls(Parity.ODD, a - m + 1)

    def __str__(self) -> str:
        return f"b{self.index}" if self.parity is Parity.EVEN else str(self.index)


@dataclass(frozen=True)
class PyramidRow:
    start: int
    length: int
    parity: Parity

    @property
    def stop(self) -> int:
        """Column of the rightmost box."""
        return self.start + 2 * (self.length - 1)

    @property
    def cols(self) -> range:
        return range(self.start, self.stop + 1, 2)


@dataclass(frozen=True)
class Pyramid:
    rows: tuple[PyramidRow, ...]
    kind: str = field(default="pyramid", compare=False)

    def __post_init__(self):
        for j, (lo, hi) in enumerate(zip(self.rows, self.rows[1:]), start=1):
            if not (lo.start <= hi.start <= hi.stop <= lo.stop):
                raise ShapeViolation(f"rows {j} and {j + 1} break the pyramid shape")
        for row in self.rows:
            if row.length < 1:
                raise ShapeViolation("rows must be nonempty")

    @cached_property
    def m(self) -> int:
        return sum(row.length for row in self.rows if row.parity is Parity.EVEN)

    @cached_property
    def n(self) -> int:
        return sum(row.length for row in self.rows if row.parity is Parity.ODD)

    @cached_property
    def numbering(self) -> dict[BoxId, tuple[int, int]]:
        """BoxId -> (row, col); left to right along a row, then upwards."""
        counters = {Parity.EVEN: 0, Parity.ODD: 0}
        out: dict[BoxId, tuple[int, int]] = {}
        for j, row in enumerate(self.rows, start=1):
            for c in row.cols:
                counters[row.parity] += 1
                out[BoxId(row.parity, counters[row.parity])] = (j, c)
        return out

    @cached_property
    def position_of(self) -> dict[tuple[int, int], BoxId]:
        return {pos: box for box, pos in self.numbering.items()}

    def boxes(self) -> list[BoxId]:
        """All boxes in the order of the index set."""
        return sorted(self.numbering, key=lambda b: b.flat(self.m))

    def __iter__(self) -> Iterator[BoxId]:
        return iter(self.boxes())

    def _lookup(self, i: BoxId) -> tuple[int, int]:
        try:
            return self.numbering[i]
        except KeyError:
            raise UnknownBox(str(i)) from None

    def row(self, i: BoxId) -> int:
        return self._lookup(i)[0]

    def col(self, i: BoxId) -> int:
        return self._lookup(i)[1]

    def row_length(self, i: BoxId) -> int:
        return self.rows[self.row(i) - 1].length

    @cached_property
    def col_array(self) -> np.ndarray:
        """Columns indexed by flat box position."""
        cols = np.empty(self.m + self.n, dtype=np.int64)
        for box, (_, c) in self.numbering.items():
            cols[box.flat(self.m)] = c
        cols.setflags(write=False)
        return cols

    @cached_property
    def row_array(self) -> np.ndarray:
        rows = np.empty(self.m + self.n, dtype=np.int64)
        for box, (j, _) in self.numbering.items():
            rows[box.flat(self.m)] = j
        rows.setflags(write=False)
        return rows

    def degree_matrix(self) -> np.ndarray:
        """``D[a, b] = col(b) - col(a)``, the degree of ``e_{a,b}``."""
        c = self.col_array
        return c[None, :] - c[:, None]


def _rows_from_shape(shape: MergedShape, starts) -> tuple[PyramidRow, ...]:
    return tuple(PyramidRow(s, length, parity) for s, (length, parity) in zip(starts, shape.rows))


def dynkin_pyramid(pp: PartitionPair) -> Pyramid:
    """The symmetric pyramid: every row centred on column 0."""
    shape = merge_shapes(pp.r, pp.q)
    return Pyramid(_rows_from_shape(shape, [-(length - 1) for length in shape.lengths]), kind="dynkin")


def shift_pyramid(P: Pyramid) -> Pyramid:
    """Move left by one unit each row whose length parity differs from the first row's."""
    if not P.rows:
        return Pyramid((), kind="shifted")
    ref = P.rows[0].length % 2
    rows = tuple(
        PyramidRow(row.start - 1, row.length, row.parity) if row.length % 2 != ref else row
        for row in P.rows
    )
    return Pyramid(rows, kind="shifted")


def young_pyramid(pp: PartitionPair) -> Pyramid:
    """Left-justified rows in the same order as the Dynkin pyramid."""
    shape = merge_shapes(pp.r, pp.q)
    return Pyramid(_rows_from_shape(shape, [0] * len(shape)), kind="young")


def degree(P: Pyramid, i: BoxId, j: BoxId) -> int:
    return P.col(j) - P.col(i)


def is_even_pyramid(P: Pyramid) -> bool:
    c = P.col_array
    return bool(c.size == 0 or np.all((c - c[0]) % 2 == 0))


def render_ascii(P: Pyramid, numbers: bool = False) -> str:
    """Fixed-width picture, top row first, with ``·`` under column 0.

    Each box is four characters wide and one column unit is two
    characters, so boxes in a row abut and a one-unit shift is visible.
    """
    if not P.rows:
        return "·"
    lo = min(min(row.start for row in P.rows), 0)
    hi = max(max(row.stop for row in P.rows), 0)
    width = 2 * (hi - lo) + 4
    lines = []
    for j in range(len(P.rows), 0, -1):
        row = P.rows[j - 1]
        buf = [" "] * width
        for c in row.cols:
            if numbers:
                label = str(P.position_of[(j, c)])
            else:
                label = row.parity.sign
            cell = "[" + label.rjust(2) + "]"
            off = 2 * (c - lo)
            buf[off : off + 4] = cell
        lines.append("".join(buf).rstrip())
    mark = [" "] * width
    mark[2 * (0 - lo) + 2] = "·"
    lines.append("".join(mark).rstrip())
    return "\n".join(lines)


def render_svg(P: Pyramid, numbers: bool = True, unit: int = 20) -> str:
    """SVG picture with overbarred even labels."""
    if not P.rows:
        return '<svg xmlns="http://www.w3.org/2000/svg" width="10" height="10"/>\n'
    lo = min(row.start for row in P.rows) - 1
    hi = max(row.stop for row in P.rows) + 1
    height = len(P.rows)
    w, h = (hi - lo) * unit + 2 * unit, height * 2 * unit + 2 * unit
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}">']
    for j, row in enumerate(P.rows, start=1):
        y = h - unit - 2 * unit * j
        for c in row.cols:
            x = unit + (c - 1 - lo) * unit
            parts.append(
                f'<rect x="{x}" y="{y}" width="{2 * unit}" height="{2 * unit}" '
                'fill="none" stroke="black" stroke-width="2"/>'
            )
            box = P.position_of[(j, c)]
            label = str(box.index) if numbers else row.parity.sign
            deco = ' text-decoration="overline"' if numbers and box.parity is Parity.EVEN else ""
            parts.append(
                f'<text x="{x + unit}" y="{y + 1.35 * unit}" text-anchor="middle" '
                f'font-family="monospace" font-size="{unit}"{deco}>{label}</text>'
            )
    cx = unit + (0 - lo) * unit
    parts.append(f'<circle cx="{cx}" cy="{h - unit}" r="{unit / 6}" fill="black"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
