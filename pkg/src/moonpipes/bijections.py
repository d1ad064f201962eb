"""Triangulations, Dyck fans and column-height invariance.

Staircase fillings and diagonal sets of the n-gon: cell ``(i, j)`` of
``staircase(n)`` is the pair of vertices ``{n - i + 1, j}``.  The last
cell of every row and the corner cell ``(1, 1)`` are polygon edges; they
never lie on a chain, so every maximal filling has a one there, and they
are not recorded as diagonals.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .filling import Filling, enumerate_maximal, zeros_per_row
from .shape import Cell, MoonShape, column_heights, is_stack, reverse_staircase, staircase


class NotStaircase(ValueError):
    pass


class DiagonalOutOfRange(ValueError):
    pass


class FanExtractionFailed(ValueError):
    pass


class HeightMultisetMismatch(ValueError):
    pass


# -- diagonals ------------------------------------------------------------

def is_boundary(n: int, a: int, b: int) -> bool:
    return (a - b) % n in (1, n - 1)


@dataclass(frozen=True)
class DiagonalSet:
    n: int
    diagonals: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self) -> None:
        clean = set()
        for a, b in self.diagonals:
            a, b = max(a, b), min(a, b)
            if not (1 <= b and a <= self.n) or a == b:
                raise DiagonalOutOfRange(f"{{{a}, {b}}} is not a pair of vertices of the {self.n}-gon")
            if is_boundary(self.n, a, b):
                raise DiagonalOutOfRange(f"{{{a}, {b}}} is an edge of the {self.n}-gon")
            clean.add((a, b))
        object.__setattr__(self, "diagonals", frozenset(clean))

    def __len__(self) -> int:
        return len(self.diagonals)

    def to_dict(self) -> dict:
        return {"n": self.n, "diagonals": [list(d) for d in sorted(self.diagonals)]}


def all_diagonals(n: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(1, n + 1) for b in range(1, a) if not is_boundary(n, a, b)]


def cross(d: tuple[int, int], e: tuple[int, int]) -> bool:
    """Diagonals cross iff exactly one endpoint of ``e`` lies strictly between those of ``d``."""
    a, b = sorted(d)
    c, f = e
    if len({a, b, c, f}) < 4:
        return False
    return (a < c < b) != (a < f < b)


def max_mutual_crossing(D: DiagonalSet) -> int:
    """Largest set of pairwise crossing diagonals (exact clique search)."""
    diags = sorted(D.diagonals)
    adj = [0] * len(diags)
    for i, j in combinations(range(len(diags)), 2):
        if cross(diags[i], diags[j]):
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    best = 0

    def grow(size: int, cand: int) -> None:
        nonlocal best
        if not cand:
            best = max(best, size)
            return
        if size + bin(cand).count("1") <= best:
            return
        while cand:
            low = cand & -cand
            i = low.bit_length() - 1
            cand ^= low
            grow(size + 1, cand & adj[i])
            if size + bin(cand).count("1") <= best:
                return

    grow(0, (1 << len(diags)) - 1)
    return best


def is_k_triangulation(D: DiagonalSet, k: int) -> bool:
    """No ``k + 1`` mutually crossing diagonals, and none can be added."""
    if max_mutual_crossing(D) > k:
        return False
    for d in all_diagonals(D.n):
        if d not in D.diagonals:
            if max_mutual_crossing(DiagonalSet(D.n, D.diagonals | {d})) <= k:
                return False
    return True


def staircase_size(M: MoonShape) -> int:
    n = M.num_rows + 1
    if n < 2 or M != staircase(n):
        raise NotStaircase("the shape is not a staircase")
    return n


def filling_to_diagonals(F: Filling) -> DiagonalSet:
    n = staircase_size(F.shape)
    diags = set()
    for i, j in F.ones:
        a, b = n - i + 1, j
        if not is_boundary(n, a, b):
            diags.add((a, b))
    return DiagonalSet(n, frozenset(diags))


def diagonals_to_filling(D: DiagonalSet) -> Filling:
    """Ones at the cells of the diagonals and at the polygon-edge cells."""
    n = D.n
    M = staircase(n)
    ones = {Cell(n - a + 1, b) for a, b in D.diagonals}
    ones |= {Cell(i, j) for i, j in M.cells if is_boundary(n, n - i + 1, j)}
    return Filling(M, frozenset(ones))


# -- Dyck fans --------------------------------------------------------------

@dataclass(frozen=True)
class DyckFan:
    paths: tuple[str, ...]

    @property
    def k(self) -> int:
        return len(self.paths)

    def heights(self, i: int) -> list[int]:
        h, out = 0, []
        for step in self.paths[i]:
            h += 1 if step == "U" else -1
            out.append(h)
        return out

    def problems(self, ups: int | None = None) -> list[str]:
        bad = []
        for i, p in enumerate(self.paths):
            if set(p) - {"U", "D"}:
                bad.append(f"path {i + 1} has steps other than U and D")
                continue
            if ups is not None and (p.count("U") != ups or p.count("D") != ups):
                bad.append(f"path {i + 1} = {p} does not have {ups} up and down steps")
            if min(self.heights(i), default=0) < 0 or (p and self.heights(i)[-1] != 0):
                bad.append(f"path {i + 1} = {p} is not a Dyck path")
        for i in range(len(self.paths) - 1):
            hi, lo = self.heights(i), self.heights(i + 1)
            if len(hi) != len(lo) or any(a < b for a, b in zip(hi, lo)):
                bad.append(f"paths {i + 1} and {i + 2} cross")
        return bad

    def to_dict(self) -> dict:
        return {"paths": list(self.paths)}


def _peel(cells: set[Cell], M: MoonShape) -> list[Cell]:
    start = min(cells)
    path = [start]
    cells.discard(start)
    r, c = start
    while True:
        for nxt in (Cell(r, c + 1), Cell(r + 1, c)):  # east is the more north-easterly choice
            if nxt in cells:
                break
        else:
            return path
        cells.discard(nxt)
        path.append(nxt)
        r, c = nxt


def filling_to_fan(F: Filling, k: int) -> DyckFan:
    """Split the ones of a reverse-staircase filling into ``k`` nested Dyck paths.

    Path ``j`` is peeled greedily from the top-left remaining one, stepping
    east when possible and south otherwise.  It must run from ``(j, j)`` to
    ``(n - j, n - j)``; its first and last ``2(k - j)`` steps are forced
    (all east, all south) and are cut off, and the rest is read with east
    as up and south as down.
    """
    M = F.shape
    n = M.num_rows + 1
    if M != reverse_staircase(n):
        raise NotStaircase("the shape is not a reverse staircase")
    if n <= 2 * k:
        raise FanExtractionFailed(f"need n > 2k, got n={n}, k={k}")
    remaining = set(F.ones)
    words = []
    for j in range(1, k + 1):
        if not remaining:
            raise FanExtractionFailed(f"no ones left for path {j}")
        path = _peel(remaining, M)
        if path[0] != (j, j) or path[-1] != (n - j, n - j):
            raise FanExtractionFailed(f"path {j} runs from {path[0]} to {path[-1]}")
        steps = "".join("U" if b.col > a.col else "D" for a, b in zip(path, path[1:]))
        cut = 2 * (k - j)
        head, body, tail = steps[:cut], steps[cut:len(steps) - cut], steps[len(steps) - cut:]
        if set(head) - {"U"} or set(tail) - {"D"}:
            raise FanExtractionFailed(f"path {j} = {steps} does not start and end with {cut} forced steps")
        words.append(body)
    if remaining:
        raise FanExtractionFailed(f"{len(remaining)} ones are not on any of the {k} paths")
    fan = DyckFan(tuple(words))
    bad = fan.problems(n - 2 * k)
    if bad:
        raise FanExtractionFailed("; ".join(bad))
    return fan


def dyck_fans(n: int, k: int) -> list[DyckFan]:
    """All fans of ``k`` nested Dyck paths with ``n - 2k`` up steps (brute force oracle)."""
    m = n - 2 * k
    words = []

    def rec(w: str, h: int, ups: int) -> None:
        if len(w) == 2 * m:
            words.append(w)
            return
        if ups < m:
            rec(w + "U", h + 1, ups + 1)
        if h > 0:
            rec(w + "D", h - 1, ups)

    rec("", 0, 0)
    fans = []

    def build(prefix: list[str]) -> None:
        if len(prefix) == k:
            fans.append(DyckFan(tuple(prefix)))
            return
        for w in words:
            cand = DyckFan(tuple(prefix + [w]))
            if not cand.problems(m):
                build(prefix + [w])

    build([])
    return fans


# -- column-height invariance -------------------------------------------------

@dataclass
class JonssonVerdict:
    equal: bool
    counts: tuple[int, int]
    per_zero_vector: dict[tuple[int, ...], tuple[int, int]] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.equal

    @property
    def per_zero_vector_equal(self) -> bool:
        return all(a == b for a, b in self.per_zero_vector.values())

    def to_dict(self) -> dict:
        return {
            "equal": self.equal,
            "counts": list(self.counts),
            "per_zero_vector_equal": self.per_zero_vector_equal,
        }


def jonsson_check(S1: MoonShape, S2: MoonShape, k: int) -> JonssonVerdict:
    """Compare the number of maximal fillings of two stack shapes with the same column heights.

    Counts are also split by the vector of zeros per row, which the
    tableau description predicts to agree as well.
    """
    for S in (S1, S2):
        if not is_stack(S):
            raise ValueError("both shapes must be stack shapes")
    if column_heights(S1) != column_heights(S2):
        raise HeightMultisetMismatch(
            f"column heights {sorted(column_heights(S1).elements())} vs {sorted(column_heights(S2).elements())}"
        )
    f1, f2 = enumerate_maximal(S1, k), enumerate_maximal(S2, k)
    c1 = Counter(zeros_per_row(F) for F in f1)
    c2 = Counter(zeros_per_row(F) for F in f2)
    per = {r: (c1[r], c2[r]) for r in sorted(set(c1) | set(c2))}
    return JonssonVerdict(len(f1) == len(f2), (len(f1), len(f2)), per)


def stack_classes(shapes: Iterable[MoonShape]) -> dict[tuple[int, ...], list[MoonShape]]:
    """Stack shapes grouped by their sorted column heights."""
    groups: dict[tuple[int, ...], list[MoonShape]] = {}
    for S in shapes:
        if is_stack(S):
            key = tuple(sorted(column_heights(S).elements(), reverse=True))
            groups.setdefault(key, []).append(S)
    return groups
