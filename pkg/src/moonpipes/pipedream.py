"""Pipe dreams, permutations and reduced words.

A pipe dream is stored as a tuple of row bit masks: bit ``c - 1`` of
``rows[i - 1]`` is set when cell ``(i, c)`` holds a cross.  Trailing empty
rows are dropped, so two dreams with the same crosses compare equal no
matter which ambient ``S_n`` they were built in.

Permutations are plain tuples in one-line notation, 1-indexed values.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .shape import Cell, MoonShape

Permutation = tuple[int, ...]
ReducedWord = tuple[int, ...]


class CrossOutsideShape(ValueError):
    pass


# -- permutations -------------------------------------------------------

def check_permutation(w: Sequence[int]) -> Permutation:
    w = tuple(int(x) for x in w)
    if sorted(w) != list(range(1, len(w) + 1)):
        raise ValueError(f"{w} is not a permutation of 1..{len(w)}")
    return w


def identity(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def longest(n: int) -> Permutation:
    return tuple(range(n, 0, -1))


def inverse(w: Sequence[int]) -> Permutation:
    inv = [0] * len(w)
    for i, wi in enumerate(w, start=1):
        inv[wi - 1] = i
    return tuple(inv)


def standardize(w: Sequence[int]) -> Permutation:
    """Drop trailing fixed points (keeps at least one entry)."""
    w = list(w)
    while len(w) > 1 and w[-1] == len(w):
        w.pop()
    return tuple(w)


def extend(w: Sequence[int], n: int) -> Permutation:
    w = tuple(w)
    if n < len(w):
        if standardize(w) != standardize(w[:n]) or len(standardize(w)) > n:
            raise ValueError(f"{w} does not fit in S_{n}")
        return w[:n]
    return w + tuple(range(len(w) + 1, n + 1))


def coxeter_length(w: Sequence[int]) -> int:
    """Number of inversions."""
    return sum(1 for i, j in itertools.combinations(range(len(w)), 2) if w[i] > w[j])


def evaluate_word(word: Iterable[int], n: int) -> Permutation:
    """Product ``s_{v_1} s_{v_2} ... s_{v_l}`` in ``S_n``, one-line notation."""
    w = list(range(1, n + 1))
    for v in word:
        if not 1 <= v < n:
            raise ValueError(f"letter {v} does not index a simple transposition of S_{n}")
        w[v - 1], w[v] = w[v], w[v - 1]
    return tuple(w)


def is_reduced_word(word: Sequence[int], n: int | None = None) -> bool:
    if n is None:
        n = max(word, default=0) + 1
    return coxeter_length(evaluate_word(word, n)) == len(word)


def permutations(n: int) -> list[Permutation]:
    return list(itertools.permutations(range(1, n + 1)))


# -- pipe dreams --------------------------------------------------------

def _strip(rows: Iterable[int]) -> tuple[int, ...]:
    rows = list(rows)
    while rows and rows[-1] == 0:
        rows.pop()
    return tuple(rows)


def _mask_cells(rows: Sequence[int]) -> list[Cell]:
    out = []
    for i, m in enumerate(rows, start=1):
        c = 1
        while m:
            if m & 1:
                out.append(Cell(i, c))
            m >>= 1
            c += 1
    return out


@dataclass(frozen=True)
class PipeDream:
    """Cross set in the quarter plane; every other cell is an elbow."""

    rows: tuple[int, ...]
    n: int = field(default=0, compare=False)

    def __post_init__(self) -> None:
        rows = _strip(self.rows)
        object.__setattr__(self, "rows", rows)
        need = max((c.row + c.col for c in _mask_cells(rows)), default=1)
        if self.n == 0:
            object.__setattr__(self, "n", need)
        elif self.n < need:
            raise ValueError(f"crosses need ambient size {need}, got n={self.n}")

    @classmethod
    def from_crosses(cls, crosses: Iterable[tuple[int, int]], n: int = 0) -> "PipeDream":
        rows: list[int] = []
        for r, c in crosses:
            if r < 1 or c < 1:
                raise ValueError(f"cell {(r, c)} is outside the quarter plane")
            while len(rows) < r:
                rows.append(0)
            rows[r - 1] |= 1 << (c - 1)
        return cls(tuple(rows), n)

    @cached_property
    def crosses(self) -> frozenset[Cell]:
        return frozenset(_mask_cells(self.rows))

    def sorted_crosses(self) -> list[Cell]:
        return _mask_cells(self.rows)

    def has_cross(self, r: int, c: int) -> bool:
        return r <= len(self.rows) and bool(self.rows[r - 1] >> (c - 1) & 1)

    def __len__(self) -> int:
        return sum(bin(m).count("1") for m in self.rows)

    def row_counts(self) -> tuple[int, ...]:
        return tuple(bin(m).count("1") for m in self.rows)

    def with_ambient(self, n: int) -> "PipeDream":
        return PipeDream(self.rows, n)

    def label(self) -> str:
        """Canonical cross-set string, used as a node name."""
        return "".join(f"({r},{c})" for r, c in self.sorted_crosses()) or "()"

    def render(self) -> str:
        """Staircase grid of ``+`` (cross) and ``.`` (elbow)."""
        lines = []
        for i in range(1, self.n):
            lines.append("".join("+" if self.has_cross(i, j) else "." for j in range(1, self.n - i + 1)))
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {"n": self.n, "crosses": [list(c) for c in self.sorted_crosses()]}

    @classmethod
    def from_dict(cls, doc: dict) -> "PipeDream":
        return cls.from_crosses((tuple(c) for c in doc["crosses"]), doc.get("n", 0))


def parse_pipedream(text: str) -> PipeDream:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    crosses = [(i, j) for i, line in enumerate(lines, 1) for j, ch in enumerate(line, 1) if ch == "+"]
    bad = {ch for line in lines for ch in line} - set("+.")
    if bad:
        raise ValueError(f"unexpected characters {sorted(bad)}")
    return PipeDream.from_crosses(crosses, len(lines) + 1)


def canonical_key(D: PipeDream) -> list[Cell]:
    """Sort key: lexicographic order on the (row, col) list of crosses."""
    return D.sorted_crosses()


def trace_pipes(D: PipeDream) -> dict[int, list[tuple[int, int]]]:
    """Path of every pipe, keyed by the column it enters from above.

    A pipe travels south from the top of its column.  Crosses let it pass
    straight through; an elbow sends a pipe arriving from the north out to
    the west, and one arriving from the east out to the south.
    """
    rows, n = D.rows, D.n
    nrows = len(rows)
    paths = {}
    for j in range(1, n + 1):
        r, c, south = 1, j, True
        path = []
        while c >= 1:
            path.append((r, c))
            cross = r <= nrows and rows[r - 1] >> (c - 1) & 1
            if south:
                if cross:
                    r += 1
                else:
                    c -= 1
                    south = False
            else:
                if cross:
                    c -= 1
                else:
                    r += 1
                    south = True
        paths[j] = path
    return paths


def traced_permutation(D: PipeDream) -> Permutation:
    """Permutation read off the explicit pipe paths of :func:`trace_pipes`."""
    w = [0] * D.n
    for j, path in trace_pipes(D).items():
        w[path[-1][0] - 1] = j
    return tuple(w)


def _permutation_of_rows(rows: Sequence[int], n: int) -> Permutation:
    nrows = len(rows)
    w = [0] * n
    for j in range(1, n + 1):
        r, c, south = 1, j, True
        while c >= 1:
            cross = r <= nrows and rows[r - 1] >> (c - 1) & 1
            if south:
                if cross:
                    r += 1
                else:
                    c -= 1
                    south = False
            elif cross:
                c -= 1
            else:
                r += 1
                south = True
        w[r - 1] = j
    return tuple(w)


def permutation_of(D: PipeDream) -> Permutation:
    """Permutation ``w`` with the pipe entering column ``i`` leaving row ``w^{-1}(i)``."""
    return _permutation_of_rows(D.rows, D.n)


def word_of(D: PipeDream) -> ReducedWord:
    """Letters ``i + j - 1``, rows top to bottom, each row right to left."""
    word = []
    for i, m in enumerate(D.rows, start=1):
        for j in range(m.bit_length(), 0, -1):
            if m >> (j - 1) & 1:
                word.append(i + j - 1)
    return tuple(word)


def is_reduced(D: PipeDream) -> bool:
    return len(D) == coxeter_length(permutation_of(D))


# -- fillings <-> pipe dreams ---------------------------------------------

def from_filling(F) -> PipeDream:
    """Zeros become crosses; ones and cells outside the shape become elbows."""
    return PipeDream(F.zero_rows(), F.shape.ambient)


def to_filling(D: PipeDream, M: MoonShape):
    from .filling import Filling

    outside = [c for c in D.crosses if c not in M]
    if outside:
        raise CrossOutsideShape(f"crosses {sorted(outside)} lie outside the shape")
    return Filling(M, frozenset(c for c in M.cells if c not in D.crosses))


def shape_permutation(M: MoonShape, k: int) -> Permutation:
    """The permutation shared by all maximal fillings of ``M`` (trailing fixed points dropped)."""
    from .filling import d_top

    return standardize(permutation_of(from_filling(d_top(M, k))))


# -- extremal pipe dreams -------------------------------------------------

def bb_top(w: Sequence[int]) -> PipeDream:
    """Top-justified columns: column ``j`` holds ``#{i < w^{-1}(j) : w_i > j}`` crosses."""
    w = check_permutation(w)
    winv = inverse(w)
    crosses = []
    for j in range(1, len(w) + 1):
        height = sum(1 for i in range(1, winv[j - 1]) if w[i - 1] > j)
        crosses.extend((c, j) for c in range(1, height + 1))
    return PipeDream.from_crosses(crosses, len(w))


def bb_bot(w: Sequence[int]) -> PipeDream:
    """Left-justified rows given by the Lehmer code."""
    w = check_permutation(w)
    crosses = []
    for i in range(1, len(w) + 1):
        code = sum(1 for j in range(i + 1, len(w) + 1) if w[j - 1] < w[i - 1])
        crosses.extend((i, c) for c in range(1, code + 1))
    return PipeDream.from_crosses(crosses, len(w))


# -- enumeration of RC(w) -------------------------------------------------

def rc_brute_force(w: Sequence[int]) -> list[PipeDream]:
    """All subsets of the staircase of size ``l(w)`` whose word multiplies to ``w``."""
    w = check_permutation(w)
    n = len(w)
    length = coxeter_length(w)
    cells = [(i, j) for i in range(1, n) for j in range(1, n - i + 1)]
    out = []
    for subset in itertools.combinations(cells, length):
        D = PipeDream.from_crosses(subset, n)
        if evaluate_word(word_of(D), n) == w:
            out.append(D)
    return sorted(out, key=canonical_key)


def enumerate_rc(
    w: Sequence[int],
    r: Sequence[int] | None = None,
    *,
    method: str = "chute",
    max_length: int = 16,
    brute_max_n: int = 6,
) -> list[PipeDream]:
    """Reduced pipe dreams of ``w``, optionally with ``r[i-1]`` crosses in row ``i``.

    ``method`` is ``"chute"`` (closure of ``bb_top(w)`` under chute moves),
    ``"brute"`` (subset search) or ``"both"`` (runs both and insists they
    agree).
    """
    from .chute import OracleDisagreement, chute_closure

    w = check_permutation(w)
    if coxeter_length(w) > max_length:
        raise ValueError(f"length {coxeter_length(w)} exceeds max_length={max_length}")
    if method not in ("chute", "brute", "both"):
        raise ValueError(f"unknown method {method!r}")
    if method in ("brute", "both") and len(standardize(w)) > brute_max_n:
        raise ValueError(f"brute force is limited to n <= {brute_max_n}")
    result = None
    if method in ("chute", "both"):
        result = chute_closure(bb_top(w))
    if method in ("brute", "both"):
        brute = rc_brute_force(standardize(w))
        brute = [d.with_ambient(len(w)) for d in brute]
        if result is not None and set(result) != set(brute):
            raise OracleDisagreement(
                f"chute closure found {len(result)} dreams, brute force {len(brute)}"
            )
        result = brute
    assert result is not None
    if r is not None:
        target = _strip(r)
        result = [d for d in result if _strip(d.row_counts()) == target]
    return sorted(result, key=canonical_key)
