"""Moon, stack and Ferrers polyominoes stored as row intervals.

Cells are ``(row, col)`` pairs, 1-indexed, rows growing downward and
columns growing rightward.  Every shape is translated so that it touches
row 1 and column 1.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple


class Cell(NamedTuple):
    row: int
    col: int


class ShapeError(ValueError):
    pass


class NotAPolyomino(ShapeError):
    pass


class NotConvex(ShapeError):
    pass


class NotIntersectionFree(ShapeError):
    pass


class ShapeClass(enum.Enum):
    MOON = "moon"
    STACK = "stack"
    FERRERS = "ferrers"


@dataclass(frozen=True)
class MoonShape:
    """A moon polyomino given by ``(row, left, right)`` triples, top to bottom."""

    rows: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        _validate_rows(self.rows)

    # -- derived data ---------------------------------------------------
    @cached_property
    def cells(self) -> tuple[Cell, ...]:
        return tuple(Cell(r, c) for r, lo, hi in self.rows for c in range(lo, hi + 1))

    @cached_property
    def _interval(self) -> dict[int, tuple[int, int]]:
        return {r: (lo, hi) for r, lo, hi in self.rows}

    @cached_property
    def _col_interval(self) -> dict[int, tuple[int, int]]:
        cols: dict[int, list[int]] = {}
        for r, lo, hi in self.rows:
            for c in range(lo, hi + 1):
                cols.setdefault(c, []).append(r)
        return {c: (min(rs), max(rs)) for c, rs in sorted(cols.items())}

    def __contains__(self, cell: object) -> bool:
        try:
            r, c = cell  # type: ignore[misc]
        except (TypeError, ValueError):
            return False
        iv = self._interval.get(r)
        return iv is not None and iv[0] <= c <= iv[1]

    def __len__(self) -> int:
        return sum(hi - lo + 1 for _, lo, hi in self.rows)

    def __iter__(self) -> Iterator[Cell]:
        return iter(self.cells)

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    @cached_property
    def num_cols(self) -> int:
        return max(hi for _, _, hi in self.rows) - min(lo for _, lo, _ in self.rows) + 1

    @property
    def bounding_box(self) -> tuple[int, int, int, int]:
        """``(top, bottom, left, right)``."""
        return (
            self.rows[0][0],
            self.rows[-1][0],
            min(lo for _, lo, _ in self.rows),
            max(hi for _, _, hi in self.rows),
        )

    @cached_property
    def ambient(self) -> int:
        """Smallest ``n`` such that every cell satisfies ``row + col <= n``."""
        return max(r + hi for r, _, hi in self.rows)

    def row_interval(self, row: int) -> tuple[int, int] | None:
        return self._interval.get(row)

    def col_interval(self, col: int) -> tuple[int, int] | None:
        return self._col_interval.get(col)

    def columns(self) -> dict[int, tuple[int, int]]:
        return dict(self._col_interval)

    def contains_rect(self, top: int, bottom: int, left: int, right: int) -> bool:
        # convexity makes the two off-diagonal corners plus the other two enough
        return all(
            (r, c) in self for r in (top, bottom) for c in (left, right)
        )

    # -- conversions ----------------------------------------------------
    def to_dict(self) -> dict:
        return {"rows": [list(r) for r in self.rows]}

    @classmethod
    def from_dict(cls, doc: dict) -> "MoonShape":
        return cls(tuple(tuple(r) for r in doc["rows"]))

    @classmethod
    def from_cells(cls, cells: Iterable[tuple[int, int]]) -> "MoonShape":
        """Build from an arbitrary cell set, translating to row 1 / column 1."""
        cells = {(int(r), int(c)) for r, c in cells}
        if not cells:
            raise NotAPolyomino("empty cell set")
        _check_connected(cells)
        r0 = min(r for r, _ in cells)
        c0 = min(c for _, c in cells)
        by_row: dict[int, list[int]] = {}
        for r, c in cells:
            by_row.setdefault(r - r0 + 1, []).append(c - c0 + 1)
        rows = []
        for r in sorted(by_row):
            cs = sorted(by_row[r])
            if cs[-1] - cs[0] + 1 != len(cs):
                raise NotConvex(f"row {r} is not a contiguous interval")
            rows.append((r, cs[0], cs[-1]))
        return cls(tuple(rows))

    def render(self) -> str:
        _, _, left, right = self.bounding_box
        lines = []
        for _, lo, hi in self.rows:
            lines.append("".join("#" if lo <= c <= hi else "." for c in range(left, right + 1)))
        return "\n".join(lines)

    def mirror(self) -> "MoonShape":
        """Left-right reflection (always a moon shape again)."""
        _, _, left, right = self.bounding_box
        return MoonShape(tuple((r, left + right - hi, left + right - lo) for r, lo, hi in self.rows))

    def transpose(self) -> "MoonShape":
        return MoonShape.from_cells((c, r) for r, c in self.cells)

    def __str__(self) -> str:
        return self.render()


def _check_connected(cells: set[tuple[int, int]]) -> None:
    start = next(iter(cells))
    seen = {start}
    stack = [start]
    while stack:
        r, c = stack.pop()
        for nb in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)):
            if nb in cells and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    if len(seen) != len(cells):
        missing = sorted(cells - seen)
        raise NotAPolyomino(f"cell set is disconnected; unreachable cells {missing[:5]}")


def _validate_rows(rows: tuple[tuple[int, int, int], ...]) -> None:
    if not rows:
        raise NotAPolyomino("empty shape")
    for r, lo, hi in rows:
        if r < 1 or lo < 1 or hi < lo:
            raise ShapeError(f"bad row interval {(r, lo, hi)}")
    idx = [r for r, _, _ in rows]
    if idx != list(range(idx[0], idx[0] + len(idx))):
        raise NotAPolyomino(f"row indices {idx} are not consecutive")
    for (r1, lo1, hi1), (r2, lo2, hi2) in zip(rows, rows[1:]):
        if hi1 < lo2 or hi2 < lo1:
            raise NotAPolyomino(f"rows {r1} and {r2} do not touch")
    # column convexity: a column may not reappear after leaving
    seen: dict[int, int] = {}
    for r, lo, hi in rows:
        for c in range(lo, hi + 1):
            if c in seen and seen[c] != r - 1:
                raise NotConvex(f"column {c} has a gap between rows {seen[c]} and {r}")
            seen[c] = r
    for i, (r1, lo1, hi1) in enumerate(rows):
        for r2, lo2, hi2 in rows[i + 1:]:
            nested = (lo1 <= lo2 and hi2 <= hi1) or (lo2 <= lo1 and hi1 <= hi2)
            if not nested:
                raise NotIntersectionFree(
                    f"rows {r1} [{lo1},{hi1}] and {r2} [{lo2},{hi2}] are incomparable"
                )


def parse_shape(text: str) -> MoonShape:
    """Parse a ``#``/``.`` grid into a :class:`MoonShape`."""
    lines = [ln.rstrip() for ln in text.strip("\n").splitlines()]
    lines = [ln for ln in lines if ln.strip()]
    cells = set()
    for r, line in enumerate(lines, start=1):
        for c, ch in enumerate(line, start=1):
            if ch == "#":
                cells.add((r, c))
            elif ch not in ". ":
                raise ShapeError(f"unexpected character {ch!r} at row {r}, column {c}")
    if not cells:
        raise NotAPolyomino("grid contains no cells")
    return MoonShape.from_cells(cells)


def render_shape(shape: MoonShape) -> str:
    return shape.render()


def is_stack(shape: MoonShape) -> bool:
    top = shape.rows[0][0]
    return all(lo_row == top for lo_row, _ in shape.columns().values())


def is_ferrers(shape: MoonShape) -> bool:
    if not is_stack(shape):
        return False
    widths = [hi - lo + 1 for _, lo, hi in shape.rows]
    return all(lo == 1 for _, lo, _ in shape.rows) and all(
        a >= b for a, b in zip(widths, widths[1:])
    )


def classify(shape: MoonShape) -> ShapeClass:
    if is_ferrers(shape):
        return ShapeClass.FERRERS
    if is_stack(shape):
        return ShapeClass.STACK
    return ShapeClass.MOON


def staircase(n: int) -> MoonShape:
    """Rows ``n-1, n-2, ..., 1`` left-justified."""
    if n < 2:
        raise ValueError("staircase needs n >= 2")
    return MoonShape(tuple((i, 1, n - i) for i in range(1, n)))


def reverse_staircase(n: int) -> MoonShape:
    if n < 2:
        raise ValueError("reverse staircase needs n >= 2")
    return MoonShape(tuple((i, i, n - 1) for i in range(1, n)))


def ferrers(widths: Iterable[int]) -> MoonShape:
    widths = list(widths)
    return MoonShape(tuple((i, 1, w) for i, w in enumerate(widths, start=1)))


def column_heights(shape: MoonShape) -> Counter:
    return Counter(bot - top + 1 for top, bot in shape.columns().values())


def enumerate_moon_shapes(max_rows: int, max_cols: int, *, guard: int = 6) -> list[MoonShape]:
    """All moon shapes inside a ``max_rows x max_cols`` box, canonically placed.

    Returned in a deterministic order (by number of rows, then row data).
    """
    if max_rows > guard or max_cols > guard:
        raise ValueError(f"box {max_rows}x{max_cols} exceeds the guard {guard}")
    intervals = [(lo, hi) for lo in range(1, max_cols + 1) for hi in range(lo, max_cols + 1)]
    found: set[tuple[tuple[int, int, int], ...]] = set()

    def nested(a, b):
        return (a[0] <= b[0] and b[1] <= a[1]) or (b[0] <= a[0] and a[1] <= b[1])

    def extend(rows: list[tuple[int, int]], last_seen: dict[int, int]) -> None:
        if min(lo for lo, _ in rows) == 1:
            found.add(tuple((i + 1, lo, hi) for i, (lo, hi) in enumerate(rows)))
        if len(rows) == max_rows:
            return
        r = len(rows)
        for iv in intervals:
            if not all(nested(iv, prev) for prev in rows):
                continue
            # the new row must touch the previous one and respect column convexity
            if iv[1] < rows[-1][0] or rows[-1][1] < iv[0]:
                continue
            if any(c in last_seen and last_seen[c] != r - 1 for c in range(iv[0], iv[1] + 1)):
                continue
            seen = dict(last_seen)
            for c in range(iv[0], iv[1] + 1):
                seen[c] = r
            rows.append(iv)
            extend(rows, seen)
            rows.pop()

    for iv in intervals:
        extend([iv], {c: 0 for c in range(iv[0], iv[1] + 1)})
    return [MoonShape(rows) for rows in sorted(found, key=lambda t: (len(t), t))]
