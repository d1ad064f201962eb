"""0-1-fillings of moon polyominoes, north-east chains and maximal fillings.

A north-east chain is a set of 1-cells, pairwise strictly north-east of
each other, whose bounding rectangle lies in the shape.  For a chain with
south-west end ``a`` this only constrains the north-east end, and the
admissible north-east ends of ``a`` form a rectangle ``R(a)``: rows from
the top of ``a``'s column down to ``a.row - 1``, columns from
``a.col + 1`` to the right end of ``a``'s row.  So the longest chain
starting at ``a`` is one plus the longest plain chain of 1-cells inside
``R(a)``.  All chain computations below run on bit sets over the cells of
the shape in reading order.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .shape import Cell, MoonShape

log = logging.getLogger(__name__)


class ChainBoundExceeded(ValueError):
    pass


class NonUniqueFixpoint(AssertionError):
    """Two different fillings without (inverse) chute moves were found."""

    def __init__(self, first: "Filling", second: "Filling", kind: str):
        self.witnesses = (first, second)
        super().__init__(f"two {kind} fixpoints:\n{first.render()}\n--\n{second.render()}")


# -- per-shape bit set tables ---------------------------------------------

class _Index:
    """Precomputed masks for one shape; bit ``i`` is the ``i``-th cell in reading order."""

    def __init__(self, shape: MoonShape):
        self.shape = shape
        self.cells = list(shape.cells)
        self.pos = {c: i for i, c in enumerate(self.cells)}
        n = len(self.cells)
        self.size = n
        cols = shape.columns()
        self.ne = [0] * n  # strictly north-east, any distance
        self.sw = [0] * n
        self.reach = [0] * n  # R(a)
        for i, (r, c) in enumerate(self.cells):
            top = cols[c][0]
            right = shape.row_interval(r)[1]
            for j, (r2, c2) in enumerate(self.cells):
                if r2 < r and c2 > c:
                    self.ne[i] |= 1 << j
                    if r2 >= top and c2 <= right:
                        self.reach[i] |= 1 << j
                elif r2 > r and c2 < c:
                    self.sw[i] |= 1 << j
        # reach_inv[e]: the cells a with e in R(a)
        self.reach_inv = [0] * n
        for a in range(n):
            for e in _bits(self.reach[a]):
                self.reach_inv[e] |= 1 << a
        self.row_start = []
        self.row_mask = []
        start = 0
        for _, lo, hi in shape.rows:
            width = hi - lo + 1
            self.row_start.append(start)
            self.row_mask.append(((1 << width) - 1) << start)
            start += width
        self.full = (1 << n) - 1

    def mask(self, cells: Iterable[tuple[int, int]]) -> int:
        m = 0
        for c in cells:
            m |= 1 << self.pos[c]
        return m

    def cells_of(self, m: int) -> frozenset[Cell]:
        return frozenset(self.cells[i] for i in _bits(m))

    # chain lengths ---------------------------------------------------------
    def longest_plain(self, T: int, need: int | None = None) -> int:
        """Longest strictly north-east sequence in ``T`` (no shape condition)."""
        ne = self.ne
        length = 0
        level = T
        while level:
            length += 1
            if need is not None and length >= need:
                return length
            shadow = 0
            x = level
            while x:
                low = x & -x
                shadow |= ne[low.bit_length() - 1]
                x ^= low
            level = T & shadow
        return length

    def longest_chain(self, ones: int) -> int:
        best = 0
        for a in _bits(ones):
            best = max(best, 1 + self.longest_plain(ones & self.reach[a]))
        return best

    def has_chain(self, ones: int, m: int) -> bool:
        if m <= 0:
            return True
        for a in _bits(ones):
            if 1 + self.longest_plain(ones & self.reach[a], m - 1) >= m:
                return True
        return False

    def chain_through(self, S: int, e: int, m: int) -> bool:
        """Is there a chain of length ``m`` in ``S | {e}`` that contains ``e``?"""
        S |= 1 << e
        if 1 + self.longest_plain(S & self.reach[e], m - 1) >= m:
            return True
        ne_e, sw_e = self.ne[e], self.sw[e]
        for a in _bits(S & self.reach_inv[e]):
            T = S & self.reach[a]
            above = self.longest_plain(T & ne_e)
            if 2 + above >= m:
                return True
            below = self.longest_plain(T & sw_e)
            if 2 + above + below >= m:
                return True
        return False


def _bits(m: int):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


@lru_cache(maxsize=4096)
def _index(shape: MoonShape) -> _Index:
    return _Index(shape)


# -- fillings -------------------------------------------------------------

@dataclass(frozen=True)
class Filling:
    shape: MoonShape
    ones: frozenset[Cell]

    def __post_init__(self) -> None:
        ones = frozenset(Cell(*c) for c in self.ones)
        bad = [c for c in ones if c not in self.shape]
        if bad:
            raise ValueError(f"cells {sorted(bad)} are not in the shape")
        object.__setattr__(self, "ones", ones)

    @classmethod
    def _from_mask(cls, shape: MoonShape, m: int) -> "Filling":
        return cls(shape, _index(shape).cells_of(m))

    @cached_property
    def mask(self) -> int:
        return _index(self.shape).mask(self.ones)

    @property
    def zeros(self) -> frozenset[Cell]:
        return frozenset(c for c in self.shape.cells if c not in self.ones)

    def zero_rows(self) -> tuple[int, ...]:
        """Row bit masks of the zero cells (bit ``c - 1`` for column ``c``)."""
        rows = []
        for r, lo, hi in self.shape.rows:
            m = 0
            for c in range(lo, hi + 1):
                if (r, c) not in self.ones:
                    m |= 1 << (c - 1)
            rows.append(m)
        return tuple(rows)

    @classmethod
    def from_zero_rows(cls, shape: MoonShape, rows: Sequence[int]) -> "Filling":
        ones = []
        for r, lo, hi in shape.rows:
            m = rows[r - 1] if r <= len(rows) else 0
            ones.extend(Cell(r, c) for c in range(lo, hi + 1) if not m >> (c - 1) & 1)
        return cls(shape, frozenset(ones))

    def render(self) -> str:
        _, _, left, right = self.shape.bounding_box
        lines = []
        for r, lo, hi in self.shape.rows:
            line = []
            for c in range(1, right + 1):
                if not lo <= c <= hi:
                    line.append(".")
                else:
                    line.append("1" if (r, c) in self.ones else "0")
            lines.append("".join(line))
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {"shape": self.shape.to_dict(), "ones": [list(c) for c in sorted(self.ones)]}

    def sort_key(self) -> tuple:
        return tuple(sorted(self.zeros))

    def __str__(self) -> str:
        return self.render()


def parse_filling(text: str) -> Filling:
    """Grid with ``.`` outside the shape, ``0`` for empty cells and ``1`` for ones."""
    lines = [ln.rstrip() for ln in text.strip("\n").splitlines() if ln.strip()]
    cells, ones = [], []
    for r, line in enumerate(lines, start=1):
        for c, ch in enumerate(line, start=1):
            if ch in "01":
                cells.append((r, c))
                if ch == "1":
                    ones.append((r, c))
            elif ch != ".":
                raise ValueError(f"unexpected character {ch!r} at row {r}, column {c}")
    shape = MoonShape.from_cells(cells)
    if min(r for r, _ in cells) != 1 or min(c for _, c in cells) != 1:
        r0 = min(r for r, _ in cells) - 1
        c0 = min(c for _, c in cells) - 1
        ones = [(r - r0, c - c0) for r, c in ones]
    return Filling(shape, frozenset(Cell(*c) for c in ones))


def all_ones(shape: MoonShape) -> Filling:
    return Filling(shape, frozenset(shape.cells))


def all_zeros(shape: MoonShape) -> Filling:
    return Filling(shape, frozenset())


def longest_ne_chain(F: Filling) -> int:
    return _index(F.shape).longest_chain(F.mask)


def is_maximal(F: Filling, k: int) -> bool:
    """No chain longer than ``k``, and switching any zero to one creates a ``(k+1)``-chain."""
    idx = _index(F.shape)
    ones = F.mask
    longest = idx.longest_chain(ones)
    if longest > k:
        raise ChainBoundExceeded(f"filling has a chain of length {longest} > {k}")
    return all(idx.chain_through(ones, e, k + 1) for e in _bits(idx.full & ~ones))


def zeros_per_row(F: Filling) -> tuple[int, ...]:
    return tuple(
        sum(1 for c in range(lo, hi + 1) if (r, c) not in F.ones) for r, lo, hi in F.shape.rows
    )


# -- enumeration by backtracking ----------------------------------------------

def _backtrack(shape: MoonShape, k: int, r: Sequence[int] | None = None) -> list[int]:
    """Masks of all maximal fillings, cells decided in reading order.

    When a cell is reached, every cell north-east of it is already decided,
    so the cell is the south-west end of any chain it could join.  If
    placing a one there closes a ``(k+1)``-chain the cell is a forced zero
    (already witnessed); otherwise both values are tried and a chosen zero
    waits for a witness from later rows.  After each row every pending zero
    is dropped once witnessed, and the branch dies if some pending zero
    cannot be witnessed even if all undecided cells became ones.
    """
    idx = _index(shape)
    n = idx.size
    reach = idx.reach
    row_of = []
    for ri, (_, lo, hi) in enumerate(shape.rows):
        row_of.extend([ri] * (hi - lo + 1))
    row_end = {idx.row_start[i] + (hi - lo + 1) for i, (_, lo, hi) in enumerate(shape.rows)}
    if r is not None:
        if len(r) > len(shape.rows) and any(r[len(shape.rows):]):
            return []
        r = list(r) + [0] * (len(shape.rows) - len(r))
    out: list[int] = []

    def rec(pos: int, ones: int, pending: tuple[int, ...]) -> None:
        if pos in row_end:
            ri = row_of[pos - 1]
            if r is not None and bin(idx.row_mask[ri] & ~ones).count("1") != r[ri]:
                return
            if pending:
                optimistic = ones | (idx.full & ~((1 << pos) - 1))
                still = []
                for e in pending:
                    if idx.chain_through(ones, e, k + 1):
                        continue
                    if pos < n and not idx.chain_through(optimistic, e, k + 1):
                        return
                    still.append(e)
                pending = tuple(still)
        if pos == n:
            if not pending:
                out.append(ones)
            return
        if idx.longest_plain(ones & reach[pos], k) >= k:
            # placing a one here would give a (k+1)-chain with south-west end pos
            rec(pos + 1, ones, pending)
            return
        rec(pos + 1, ones | (1 << pos), pending)
        # a free zero needs a witness chain; give up at once if even making
        # every undecided cell a one cannot supply it
        if idx.chain_through(ones | (idx.full & ~((2 << pos) - 1)), pos, k + 1):
            rec(pos + 1, ones, pending + (pos,))

    rec(0, 0, ())
    return out


def greedy_filling(M: MoonShape, k: int, order: str = "rows") -> Filling:
    """A maximal filling: put a one wherever it does not close a ``(k+1)``-chain.

    ``order`` is ``"rows"`` (reading order) or ``"columns"`` (columns right
    to left, each top to bottom).  In both orders every cell north-east of
    the current one is already decided, which makes the result maximal.
    """
    idx = _index(M)
    if order == "rows":
        seq = range(idx.size)
    elif order == "columns":
        seq = sorted(range(idx.size), key=lambda i: (-idx.cells[i].col, idx.cells[i].row))
    else:
        raise ValueError(f"unknown order {order!r}")
    ones = 0
    for p in seq:
        if idx.longest_plain(ones & idx.reach[p], k) < k:
            ones |= 1 << p
    return Filling._from_mask(M, ones)


# -- extremal fillings via chute moves --------------------------------------

def _fixpoint(F: Filling, inverse: bool) -> Filling:
    from .chute import chute_successors, inverse_chute_successors

    step = inverse_chute_successors if inverse else chute_successors
    rows = F.zero_rows()
    while True:
        nxt = next(step(rows, F.shape), None)
        if nxt is None:
            return Filling.from_zero_rows(F.shape, rows)
        rows = nxt


@lru_cache(maxsize=8192)
def _extreme(M: MoonShape, k: int, inverse: bool) -> Filling:
    seeds = [greedy_filling(M, k, "rows"), greedy_filling(M, k, "columns")]
    results = [_fixpoint(s, inverse) for s in seeds]
    if results[0] != results[1]:
        raise NonUniqueFixpoint(results[0], results[1], "no-inverse-chute" if inverse else "no-chute")
    return results[0]


def d_top(M: MoonShape, k: int) -> Filling:
    """The maximal filling admitting no inverse chute that keeps its zeros in ``M``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return _extreme(M, k, True)


def d_bot(M: MoonShape, k: int) -> Filling:
    """The maximal filling admitting no chute that keeps its zeros in ``M``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return _extreme(M, k, False)


def fixpoint_from(F: Filling, *, inverse: bool) -> Filling:
    """Apply within-shape chutes (or inverse chutes) to ``F`` until none is left."""
    return _fixpoint(F, inverse)


def _chute_enumeration(M: MoonShape, k: int) -> set[tuple[int, ...]]:
    from .chute import chute_successors

    start = d_top(M, k).zero_rows()
    seen = {start}
    stack = [start]
    while stack:
        rows = stack.pop()
        for nxt in chute_successors(rows, M):
            nxt = nxt + (0,) * (len(start) - len(nxt))
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen


def enumerate_maximal(
    M: MoonShape, k: int, r: Sequence[int] | None = None, *, method: str = "backtrack"
) -> list[Filling]:
    """All maximal fillings of ``M`` with chains of length at most ``k``.

    ``method``: ``"backtrack"`` (exhaustive search), ``"chute"`` (closure of
    ``d_top(M, k)`` under chute moves inside ``M``) or ``"both"`` (runs
    both and raises :class:`~moonpipes.chute.OracleDisagreement` if they
    differ).  With ``r`` only fillings with ``r[i]`` zeros in row ``i + 1``
    are returned.
    """
    from .chute import OracleDisagreement

    if k < 0:
        raise ValueError("k must be non-negative")
    if method not in ("backtrack", "chute", "both"):
        raise ValueError(f"unknown method {method!r}")
    result: list[Filling] | None = None
    if method in ("backtrack", "both"):
        result = [Filling._from_mask(M, m) for m in _backtrack(M, k)]
    if method in ("chute", "both"):
        chuted = [Filling.from_zero_rows(M, rows) for rows in _chute_enumeration(M, k)]
        if result is not None and set(result) != set(chuted):
            raise OracleDisagreement(
                f"backtracking found {len(result)} fillings, chute closure {len(chuted)}"
            )
        result = chuted
    assert result is not None
    if r is not None:
        target = tuple(r) + (0,) * (len(M.rows) - len(r))
        result = [F for F in result if zeros_per_row(F) == target]
    return sorted(result, key=Filling.sort_key)


def count_maximal(M: MoonShape, k: int) -> int:
    return len(_backtrack(M, k))


# -- the rectangle construction, kept as a cross-check -----------------------

READINGS = ("edge", "corner")


def _touches(M: MoonShape, cell: tuple[int, int], directions) -> bool:
    r, c = cell
    return any((r + dr, c + dc) not in M for dr, dc in directions)


def geometric_extreme(M: MoonShape, k: int, *, top: bool, reading: str = "corner") -> Filling:
    """Ones on every cell covered by a rectangle of size at most ``k x k`` inside ``M``
    whose lower-left (``top=True``) or upper-right corner touches the boundary.

    ``reading`` fixes what touching means: ``"edge"`` asks for a side
    neighbour of the corner cell outside ``M`` (left/below, resp.
    above/right); ``"corner"`` asks for the corner point itself to lie on
    the boundary, i.e. also counts the diagonal neighbour.
    """
    if reading == "edge":
        dirs = ((0, -1), (1, 0)) if top else ((-1, 0), (0, 1))
    elif reading == "corner":
        dirs = ((0, -1), (1, -1), (1, 0)) if top else ((-1, 0), (-1, 1), (0, 1))
    else:
        raise ValueError(f"unknown reading {reading!r}")
    ones: set[Cell] = set()
    for (r, c) in M.cells:
        if not _touches(M, (r, c), dirs):
            continue
        for h in range(1, k + 1):
            for w in range(1, k + 1):
                if top:  # (r, c) is the lower-left cell
                    t, b, lft, rgt = r - h + 1, r, c, c + w - 1
                else:  # (r, c) is the upper-right cell
                    t, b, lft, rgt = r, r + h - 1, c - w + 1, c
                if t >= 1 and lft >= 1 and M.contains_rect(t, b, lft, rgt):
                    ones.update(Cell(i, j) for i in range(t, b + 1) for j in range(lft, rgt + 1))
    return Filling(M, frozenset(ones))


def geometric_disagreements(M: MoonShape, k: int) -> dict[str, dict[str, list[Cell]]]:
    """Cells where each rectangle reading differs from the chute fixpoints.

    Differences are logged, never raised.
    """
    report: dict[str, dict[str, list[Cell]]] = {}
    for reading in READINGS:
        for name, top, ref in (("top", True, d_top(M, k)), ("bot", False, d_bot(M, k))):
            geo = geometric_extreme(M, k, top=top, reading=reading)
            diff = sorted(geo.ones ^ ref.ones)
            if diff:
                log.info("rectangle reading %r disagrees with d_%s on %s", reading, name, diff)
            report.setdefault(reading, {})[name] = diff
    return report


def padded_ferrers(M: MoonShape, k: int) -> MoonShape:
    """Extend each of the first ``k`` rows and the first ``k`` columns of a Ferrers shape by one cell.

    The new column cells go below each column, the new row cells to the
    right of each row.
    """
    from .shape import is_ferrers

    if not is_ferrers(M):
        raise ValueError("padding is defined for Ferrers shapes")
    widths = [hi for _, _, hi in M.rows]
    heights = [bot for _, (_, bot) in sorted(M.columns().items())]
    widths = [w + 1 if i < k else w for i, w in enumerate(widths)]
    heights = [h + 1 if j < k else h for j, h in enumerate(heights)]
    cells = {(i, j) for i, w in enumerate(widths, 1) for j in range(1, w + 1)}
    cells |= {(i, j) for j, h in enumerate(heights, 1) for i in range(1, h + 1)}
    return MoonShape.from_cells(cells)
