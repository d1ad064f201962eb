"""Generalized chute moves, chute posets, lattice checks and flips.

A chutable rectangle has at least two rows and two columns; all its cells
are crosses except the north-west, south-west and south-east corners.  A
chute move takes the cross in the north-east corner to the south-west
corner.  The rectangle searches below work directly on row bit masks.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .pipedream import (
    PipeDream,
    bb_bot,
    bb_top,
    canonical_key,
    check_permutation,
    enumerate_rc,
    from_filling,
    permutation_of,
    trace_pipes,
)
from .shape import Cell, MoonShape

log = logging.getLogger(__name__)


class NotChutable(ValueError):
    pass


class NotClosed(ValueError):
    pass


class NotAnElbow(ValueError):
    pass


class OracleDisagreement(AssertionError):
    """Two independent computations of the same object differ."""


@dataclass(frozen=True)
class ChutableRect:
    top_row: int
    bottom_row: int
    left_col: int
    right_col: int

    @property
    def height(self) -> int:
        return self.bottom_row - self.top_row + 1

    @property
    def north_east(self) -> Cell:
        return Cell(self.top_row, self.right_col)

    @property
    def south_west(self) -> Cell:
        return Cell(self.bottom_row, self.left_col)


# -- rectangle search on masks --------------------------------------------

def _runs(m: int) -> Iterator[tuple[int, int]]:
    """Maximal runs ``[s, e]`` (1-indexed columns) of set bits."""
    col = 1
    while m:
        if m & 1:
            s = col
            while m & 1:
                m >>= 1
                col += 1
            yield s, col - 1
        else:
            low = (m & -m).bit_length() - 1
            m >>= low
            col += low


def chute_rects(rows: Sequence[int], max_height: int | None = None) -> Iterator[tuple[int, int, int, int]]:
    """Yield ``(top, bottom, left, right)`` for every chutable rectangle."""
    nrows = len(rows)
    for a in range(1, nrows + 1):
        for s, e in _runs(rows[a - 1]):
            if s < 2:
                continue
            c = s - 1
            for d in range(s, e + 1):
                full = ((1 << (d - c + 1)) - 1) << (c - 1)
                inner = ((1 << (d - c - 1)) - 1) << c
                ends = (1 << (c - 1)) | (1 << (d - 1))
                b = a + 1
                while True:
                    rb = rows[b - 1] if b <= nrows else 0
                    if rb & inner == inner and not rb & ends:
                        yield a, b, c, d
                    if rb & full != full or (max_height and b - a + 1 >= max_height):
                        break
                    b += 1


def inverse_chute_rects(rows: Sequence[int], max_height: int | None = None) -> Iterator[tuple[int, int, int, int]]:
    """Yield rectangles admitting an inverse chute (cross from south-west to north-east)."""
    nrows = len(rows)
    for b in range(2, nrows + 1):
        for s, e in _runs(rows[b - 1]):
            d = e + 1
            for c in range(s, e + 1):
                full = ((1 << (d - c + 1)) - 1) << (c - 1)
                inner = ((1 << (d - c - 1)) - 1) << c
                ends = (1 << (c - 1)) | (1 << (d - 1))
                a = b - 1
                while a >= 1:
                    ra = rows[a - 1]
                    if ra & inner == inner and not ra & ends:
                        yield a, b, c, d
                    if ra & full != full or (max_height and b - a + 1 >= max_height):
                        break
                    a -= 1


def _move(rows: Sequence[int], src: tuple[int, int], dst: tuple[int, int]) -> tuple[int, ...]:
    out = list(rows)
    while len(out) < dst[0]:
        out.append(0)
    out[src[0] - 1] &= ~(1 << (src[1] - 1))
    out[dst[0] - 1] |= 1 << (dst[1] - 1)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def chute_successors(
    rows: Sequence[int], within: MoonShape | None = None, max_height: int | None = None
) -> Iterator[tuple[int, ...]]:
    for a, b, c, d in chute_rects(rows, max_height):
        if within is None or (b, c) in within:
            yield _move(rows, (a, d), (b, c))


def inverse_chute_successors(
    rows: Sequence[int], within: MoonShape | None = None, max_height: int | None = None
) -> Iterator[tuple[int, ...]]:
    for a, b, c, d in inverse_chute_rects(rows, max_height):
        if within is None or (a, d) in within:
            yield _move(rows, (b, c), (a, d))


# -- public move API --------------------------------------------------------

def _as_dream(D) -> PipeDream:
    return D if isinstance(D, PipeDream) else from_filling(D)


def find_chutable(D, within: MoonShape | None = None, max_height: int | None = None) -> list[ChutableRect]:
    """All chutable rectangles of ``D``.

    With ``within``, only rectangles whose south-west corner lies in the
    shape are kept.  A :class:`~moonpipes.filling.Filling` may be passed in
    place of a pipe dream; its shape is then used for ``within`` by default.
    """
    if not isinstance(D, PipeDream) and within is None:
        within = D.shape
    D = _as_dream(D)
    return [
        ChutableRect(*r)
        for r in chute_rects(D.rows, max_height)
        if within is None or (r[1], r[2]) in within
    ]


def find_inverse_chutable(D, within: MoonShape | None = None, max_height: int | None = None) -> list[ChutableRect]:
    if not isinstance(D, PipeDream) and within is None:
        within = D.shape
    D = _as_dream(D)
    return [
        ChutableRect(*r)
        for r in inverse_chute_rects(D.rows, max_height)
        if within is None or (r[0], r[3]) in within
    ]


def _is_rect(rows: Sequence[int], r: ChutableRect, inverse: bool) -> bool:
    finder = inverse_chute_rects if inverse else chute_rects
    return (r.top_row, r.bottom_row, r.left_col, r.right_col) in set(finder(rows))


def apply_chute(D: PipeDream, r: ChutableRect) -> PipeDream:
    if not _is_rect(D.rows, r, inverse=False):
        raise NotChutable(f"{r} is not chutable")
    rows = _move(D.rows, r.north_east, r.south_west)
    return PipeDream(rows, D.n)


def apply_inverse_chute(D: PipeDream, r: ChutableRect) -> PipeDream:
    if not _is_rect(D.rows, r, inverse=True):
        raise NotChutable(f"{r} does not admit an inverse chute")
    rows = _move(D.rows, r.south_west, r.north_east)
    return PipeDream(rows, max(D.n, r.top_row + r.right_col))


def chute_closure(
    start: PipeDream | Iterable[PipeDream],
    within: MoonShape | None = None,
    *,
    inverse: bool = False,
    max_height: int | None = None,
) -> list[PipeDream]:
    """Everything reachable from ``start`` by chute (or inverse chute) moves."""
    starts = [start] if isinstance(start, PipeDream) else list(start)
    n = max(d.n for d in starts)
    step = inverse_chute_successors if inverse else chute_successors
    seen = {d.rows for d in starts}
    queue = deque(seen)
    while queue:
        rows = queue.popleft()
        for nxt in step(rows, within, max_height):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return sorted((PipeDream(r, n) for r in seen), key=canonical_key)


# -- posets -------------------------------------------------------------

def _potential(rows: Sequence[int]) -> int:
    # sum of row indices of crosses; every chute strictly increases it
    return sum(i * bin(m).count("1") for i, m in enumerate(rows, start=1))


@dataclass
class ChutePoset:
    """Finite poset where ``D <= E`` iff chute moves lead from ``E`` to ``D``.

    ``down[i]`` is a bit set of the indices below element ``i`` (itself
    included), ``up[i]`` the dual.  ``moves`` holds the raw single-move
    relation as ``(upper, lower)`` index pairs, ``covers`` its transitive
    reduction.
    """

    elements: list[PipeDream]
    moves: set[tuple[int, int]]
    down: list[int] = field(repr=False)
    up: list[int] = field(repr=False)
    covers: list[tuple[int, int]]

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, D: PipeDream) -> int:
        return self._index[D]

    def __post_init__(self) -> None:
        self._index = {d: i for i, d in enumerate(self.elements)}

    def leq(self, D: PipeDream, E: PipeDream) -> bool:
        return bool(self.down[self.index(E)] >> self.index(D) & 1)

    def maximal(self) -> list[PipeDream]:
        return [d for i, d in enumerate(self.elements) if self.up[i] == 1 << i]

    def minimal(self) -> list[PipeDream]:
        return [d for i, d in enumerate(self.elements) if self.down[i] == 1 << i]

    def interval(self, low: PipeDream, high: PipeDream) -> list[PipeDream]:
        mask = self.up[self.index(low)] & self.down[self.index(high)]
        return [d for i, d in enumerate(self.elements) if mask >> i & 1]

    def relations(self) -> set[tuple[int, int]]:
        out = set()
        for i, m in enumerate(self.down):
            for j in _bits(m):
                out.add((i, j))
        return out

    def to_dot(self, name: str = "chute_poset", highlight: Iterable[PipeDream] = ()) -> str:
        marked = {self.index(d) for d in highlight if d in self._index}
        lines = [f"digraph {name} {{"]
        for i, d in enumerate(self.elements):
            style = ", style=filled, fillcolor=lightgrey" if i in marked else ""
            lines.append(f'  n{i} [label="{d.label()}"{style}];')
        for hi, lo in sorted(self.covers):
            lines.append(f"  n{hi} -> n{lo};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _bits(m: int) -> Iterator[int]:
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def build_poset(
    elements: Iterable[PipeDream], moves_of, *, check_closed: bool = True
) -> ChutePoset:
    elements = sorted(set(elements), key=canonical_key)
    index = {d.rows: i for i, d in enumerate(elements)}
    n = len(elements)
    succ: list[list[int]] = [[] for _ in range(n)]
    moves = set()
    for i, d in enumerate(elements):
        for rows in moves_of(d.rows):
            j = index.get(rows)
            if j is None:
                if check_closed:
                    raise NotClosed(f"a move leaves the element set from {d.label()}")
                continue
            if j not in succ[i]:
                succ[i].append(j)
                moves.add((i, j))
    order = sorted(range(n), key=lambda i: -_potential(elements[i].rows))
    down = [0] * n
    for i in order:
        m = 1 << i
        for j in succ[i]:
            m |= down[j]
        down[i] = m
    up = [0] * n
    for i in range(n):
        for j in _bits(down[i]):
            up[j] |= 1 << i
    covers = []
    for i in range(n):
        strict = down[i] & ~(1 << i)
        below = 0
        for j in _bits(strict):
            below |= down[j] & ~(1 << j)
        for j in _bits(strict & ~below):
            covers.append((i, j))
    return ChutePoset(elements, moves, down, up, covers)


def chute_poset(
    elements: Iterable,
    within: MoonShape | None = None,
    *,
    max_height: int | None = None,
    check_closed: bool = True,
) -> ChutePoset:
    """Order generated by single chute moves (restricted to ``within`` if given)."""
    elements = [_as_dream(e) for e in elements]
    return build_poset(
        elements,
        lambda rows: chute_successors(rows, within, max_height),
        check_closed=check_closed,
    )


def rc_poset(w: Sequence[int], *, max_height: int | None = None) -> ChutePoset:
    return chute_poset(enumerate_rc(w), max_height=max_height)


# -- lattice check --------------------------------------------------------

@dataclass
class LatticeVerdict:
    is_lattice: bool
    witness: tuple[PipeDream, PipeDream] | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.is_lattice


def _bound(P: ChutePoset, mask: int, least: bool) -> int | None:
    """Index of the least element of ``mask`` (w.r.t. the up sets) or None."""
    if not mask:
        return None
    cands = list(_bits(mask))
    # the least upper bound sits lowest, i.e. has the largest potential
    pots = [_potential(P.elements[i].rows) for i in cands]
    best = max(pots) if least else min(pots)
    picks = [i for i, p in zip(cands, pots) if p == best]
    if len(picks) != 1:
        return None
    z = picks[0]
    cover = P.up[z] if least else P.down[z]
    return z if mask & ~cover == 0 else None


def is_lattice(P: ChutePoset) -> LatticeVerdict:
    """Check that every pair has a join and a meet."""
    n = len(P)
    for i in range(n):
        for j in range(i + 1, n):
            if _bound(P, P.up[i] & P.up[j], least=True) is None:
                return LatticeVerdict(False, (P.elements[i], P.elements[j]), "no least upper bound")
            if _bound(P, P.down[i] & P.down[j], least=False) is None:
                return LatticeVerdict(False, (P.elements[i], P.elements[j]), "no greatest lower bound")
    return LatticeVerdict(True)


def poset_from_relations(n: int, covers: Iterable[tuple[int, int]]) -> ChutePoset:
    """Abstract poset on ``0..n-1`` from ``(upper, lower)`` pairs (for testing lattice logic)."""
    covers = set(covers)
    # potentials must decrease towards the top: rank by longest chain below
    height = [0] * n
    changed = True
    while changed:
        changed = False
        for hi, lo in covers:
            if height[hi] < height[lo] + 1:
                height[hi] = height[lo] + 1
                changed = True
    top = max(height, default=0) + 1
    elems = [PipeDream.from_crosses([(top - height[i], 1 + i)]) for i in range(n)]
    succ = {i: [lo for hi, lo in covers if hi == i] for i in range(n)}
    rows_index = {e.rows: i for i, e in enumerate(elems)}
    return build_poset(elems, lambda rows: (elems[j].rows for j in succ[rows_index[rows]]))


# -- intervals for fillings --------------------------------------------------

def _prefix_rows(rows: Sequence[int], length: int) -> list[int]:
    out, acc = [], 0
    for i in range(length):
        acc += bin(rows[i]).count("1") if i < len(rows) else 0
        out.append(acc)
    return out


def _prefix_cols(rows: Sequence[int], length: int) -> list[int]:
    counts = [0] * length
    for m in rows:
        for c in _bits(m):
            if c < length:
                counts[c] += 1
    out, acc = [], 0
    for x in counts:
        acc += x
        out.append(acc)
    return out


def _dominance_filter(ref: Sequence[int], size: int, above: bool):
    """Necessary condition for a dream to sit above (or below) ``ref`` in the chute order.

    Chutes move a cross strictly down and strictly left, so row prefix
    counts never increase and column prefix counts never decrease.
    """
    rref = _prefix_rows(ref, size)
    cref = _prefix_cols(ref, size)

    def ok(rows: Sequence[int]) -> bool:
        rp = _prefix_rows(rows, size)
        cp = _prefix_cols(rows, size)
        if above:
            return all(a >= b for a, b in zip(rp, rref)) and all(a <= b for a, b in zip(cp, cref))
        return all(a <= b for a, b in zip(rp, rref)) and all(a >= b for a, b in zip(cp, cref))

    return ok


def order_interval(low: PipeDream, high: PipeDream, *, max_height: int | None = None) -> set[PipeDream]:
    """The interval ``[low, high]`` of the global chute order on ``RC(w)``.

    Computed as (dreams reachable from ``high`` by chutes) intersected with
    (dreams reachable from ``low`` by inverse chutes).  Both searches are
    pruned by the dominance filter, which only discards dreams that cannot
    lie in the interval; every chain from ``high`` down to an interval
    member stays inside the interval, so no member is lost.
    """
    size = max(low.n, high.n) + 1
    above_low = _dominance_filter(low.rows, size, above=True)
    below_high = _dominance_filter(high.rows, size, above=False)

    def search(start, step, keep):
        seen = {start}
        queue = deque([start])
        while queue:
            rows = queue.popleft()
            for nxt in step(rows, None, max_height):
                if nxt not in seen and keep(nxt):
                    seen.add(nxt)
                    queue.append(nxt)
        return seen

    if not (above_low(high.rows) and below_high(low.rows)):
        return set()
    downs = search(high.rows, chute_successors, above_low)
    if low.rows not in downs:
        return set()
    ups = search(low.rows, inverse_chute_successors, below_high)
    n = max(low.n, high.n)
    return {PipeDream(r, n) for r in downs & ups}


@dataclass
class IntervalReport:
    ok: bool
    permutation: tuple[int, ...]
    fillings: int
    interval: int
    missing: list[PipeDream] = field(default_factory=list)  # fillings outside the interval
    extra: list[PipeDream] = field(default_factory=list)  # interval members that are no fillings

    def __bool__(self) -> bool:
        return self.ok


def interval_check(M: MoonShape, k: int, fillings=None) -> IntervalReport:
    """Do the maximal fillings of ``M`` form the interval ``[d_bot, d_top]`` of ``RC(w(M,k))``?"""
    from .filling import d_bot, d_top, enumerate_maximal

    if fillings is None:
        fillings = enumerate_maximal(M, k)
    dreams = {from_filling(F) for F in fillings}
    top, bot = from_filling(d_top(M, k)), from_filling(d_bot(M, k))
    interval = order_interval(bot, top)
    w = permutation_of(top)
    return IntervalReport(
        ok=interval == dreams,
        permutation=w,
        fillings=len(dreams),
        interval=len(interval),
        missing=sorted(dreams - interval, key=canonical_key),
        extra=sorted(interval - dreams, key=canonical_key),
    )


# -- flips ----------------------------------------------------------------

def flip(D: PipeDream, elbow: tuple[int, int]) -> PipeDream | None:
    """Exchange ``elbow`` with the crossing of the two pipes meeting there, if any."""
    i, j = elbow
    if D.has_cross(i, j):
        raise NotAnElbow(f"{elbow} holds a cross")
    if i + j > D.n:
        return None
    paths = trace_pipes(D)
    through = [p for p, path in paths.items() if (i, j) in path]
    if len(through) != 2:
        return None
    a, b = (set(paths[p]) for p in through)
    meet = [c for c in a & b if D.has_cross(*c)]
    if not meet:
        return None
    (ci, cj), = meet
    rows = _move(D.rows, (ci, cj), (i, j))
    return PipeDream(rows, D.n)


def flip_edges(elements: Iterable[PipeDream]) -> set[frozenset[PipeDream]]:
    edges = set()
    for D in elements:
        for i in range(1, D.n):
            for j in range(1, D.n - i + 1):
                if D.has_cross(i, j):
                    continue
                E = flip(D, (i, j))
                if E is not None:
                    edges.add(frozenset((D, E)))
    return edges


def chute_edges(elements: Iterable[PipeDream], max_height: int | None = None) -> set[frozenset[PipeDream]]:
    edges = set()
    for D in elements:
        for rows in chute_successors(D.rows, None, max_height):
            edges.add(frozenset((D, PipeDream(rows, D.n))))
    return edges


def flip_graph(elements: Iterable[PipeDream]) -> dict[PipeDream, set[PipeDream]]:
    elements = list(elements)
    adj: dict[PipeDream, set[PipeDream]] = {d: set() for d in elements}
    for e in flip_edges(elements):
        a, b = tuple(e)
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    return adj


def flip_graph_dot(elements: Iterable[PipeDream], name: str = "flips") -> str:
    elements = sorted(set(elements), key=canonical_key)
    index = {d: i for i, d in enumerate(elements)}
    lines = [f"graph {name} {{"]
    for d, i in index.items():
        lines.append(f'  n{i} [label="{d.label()}"];')
    for e in sorted((sorted(index[x] for x in e) for e in flip_edges(elements))):
        lines.append(f"  n{e[0]} -- n{e[1]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- reports over S_n ---------------------------------------------------------

def extremes_report(w: Sequence[int]) -> dict:
    """Whether ``bb_top``/``bb_bot`` are the unique maximum/minimum of the chute poset of ``w``."""
    w = check_permutation(w)
    P = rc_poset(w)
    top, bot = bb_top(w), bb_bot(w)
    return {
        "w": list(w),
        "size": len(P),
        "top_ok": P.maximal() == [top],
        "bot_ok": P.minimal() == [bot],
    }


def two_row_comparison(w: Sequence[int]) -> dict:
    """Compare the order generated by all chutes with the one generated by two-row chutes."""
    dreams = enumerate_rc(w)
    general = chute_poset(dreams)
    two_row = chute_poset(dreams, max_height=2)
    same = general.relations() == two_row.relations()
    return {"w": list(w), "size": len(dreams), "same_order": same}
