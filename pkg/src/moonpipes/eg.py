"""Edelman-Greene insertion and the tableau description of fillings of stack shapes.

A filling is turned into a pair of words: ``v`` is the reduced word of its
pipe dream (rows top to bottom, each row right to left) and ``u`` lists
the row of every zero in the same order.  Inserting ``v`` letter by letter
gives the insertion tableau ``P``; the recording tableau ``Q`` stores
``u_i`` in the cell created by the ``i``-th insertion.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .filling import Filling, d_bot, d_top, enumerate_maximal
from .pipedream import PipeDream, evaluate_word, from_filling, is_reduced_word, word_of
from .shape import MoonShape, is_stack

log = logging.getLogger(__name__)


class InsertionUndefined(ValueError):
    pass


class NotAStack(ValueError):
    pass


class HypothesisViolated(ValueError):
    pass


class InvalidBiWord(ValueError):
    pass


# -- tableaux --------------------------------------------------------------

@dataclass(frozen=True)
class Tableau:
    rows: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self) -> None:
        rows = tuple(tuple(r) for r in self.rows if len(r))
        if any(len(a) < len(b) for a, b in zip(rows, rows[1:])):
            raise ValueError(f"row lengths {[len(r) for r in rows]} are not a partition")
        object.__setattr__(self, "rows", rows)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.rows)

    def __len__(self) -> int:
        return sum(self.shape)

    def column(self, i: int) -> tuple[int, ...]:
        """Column ``i`` (1-indexed), top to bottom."""
        return tuple(r[i - 1] for r in self.rows if len(r) >= i)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(i) for i in range(1, (self.shape[0] if self.rows else 0) + 1)]

    def entries(self) -> Counter:
        return Counter(x for r in self.rows for x in r)

    def reading_word(self) -> tuple[int, ...]:
        """Rows read left to right, bottom row first."""
        return tuple(x for r in reversed(self.rows) for x in r)

    def rows_strict(self) -> bool:
        return all(a < b for r in self.rows for a, b in zip(r, r[1:]))

    def columns_strict(self) -> bool:
        return all(a < b for c in self.columns() for a, b in zip(c, c[1:]))

    def columns_weak(self) -> bool:
        return all(a <= b for c in self.columns() for a, b in zip(c, c[1:]))

    def render(self) -> str:
        return "\n".join(" ".join(str(x) for x in r) for r in self.rows)

    def to_dict(self) -> dict:
        return {"rows": [list(r) for r in self.rows]}

    def __str__(self) -> str:
        return self.render()


def parse_tableau(text: str) -> Tableau:
    return Tableau(tuple(tuple(int(x) for x in ln.split()) for ln in text.splitlines() if ln.strip()))


def _insert(rows: list[list[int]], x: int) -> tuple[int, int]:
    """Insert ``x`` in place; returns the 0-indexed new cell."""
    r = 0
    while True:
        if r == len(rows):
            rows.append([x])
            return r, 0
        row = rows[r]
        if x > row[-1]:
            row.append(x)
            return r, len(row) - 1
        if x == row[-1]:
            raise InsertionUndefined(f"inserting {x} into row {r + 1} = {row}, whose last letter is {x}")
        if x in row and x + 1 in row:
            x = x + 1
        else:
            j = next(i for i, y in enumerate(row) if y > x)
            if x in row:
                # replacing would repeat x in the row; no rule covers this
                raise InsertionUndefined(f"inserting {x} into row {r + 1} = {row} would repeat {x}")
            x, row[j] = row[j], x
        r += 1


def eg_insert(P: Tableau, x: int) -> Tableau:
    rows = [list(r) for r in P.rows]
    _insert(rows, x)
    return Tableau(tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class BiWord:
    u: tuple[int, ...]
    v: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "u", tuple(self.u))
        object.__setattr__(self, "v", tuple(self.v))
        if len(self.u) != len(self.v):
            raise InvalidBiWord("u and v differ in length")
        for i in range(len(self.u) - 1):
            if self.u[i] > self.u[i + 1]:
                raise InvalidBiWord(f"u decreases at position {i + 1}")
            if self.u[i] == self.u[i + 1] and not self.v[i] > self.v[i + 1]:
                raise InvalidBiWord(f"u is constant but v does not descend at position {i + 1}")
        if not is_reduced_word(self.v):
            raise InvalidBiWord(f"v = {self.v} is not reduced")

    def __len__(self) -> int:
        return len(self.u)


def eg_pair(bw: BiWord) -> tuple[Tableau, Tableau]:
    P: list[list[int]] = []
    Q: list[list[int]] = []
    for a, x in zip(bw.u, bw.v):
        r, c = _insert(P, x)
        if r == len(Q):
            Q.append([])
        assert c == len(Q[r])
        Q[r].append(a)
    return Tableau(tuple(map(tuple, P))), Tableau(tuple(map(tuple, Q)))


def biword_of_filling(F: Filling, k: int | None = None) -> BiWord:
    """Row indices of the zeros paired with the reduced word of the pipe dream.

    ``k`` is accepted for symmetry with the other maps; the words do not
    depend on it.
    """
    D = from_filling(F)
    u = tuple(r for r, c in sorted(D.crosses, key=lambda c: (c[0], -c[1])))
    return BiWord(u, word_of(D))


def eg_of_filling(F: Filling) -> tuple[Tableau, Tableau]:
    return eg_pair(biword_of_filling(F))


# -- stack shapes ------------------------------------------------------------

def mu_vector(S: MoonShape) -> tuple[int, ...]:
    if not is_stack(S):
        raise NotAStack("indentation is defined for stack shapes")
    left = min(lo for _, lo, _ in S.rows)
    return tuple(lo - left for _, lo, _ in S.rows)


def column_height_partition(F: Filling) -> tuple[int, ...]:
    """Heights of the columns of the zero cells, largest first."""
    heights = Counter(c for r, c in F.zeros)
    return tuple(sorted(heights.values(), reverse=True))


def conjugate(shape: Sequence[int]) -> tuple[int, ...]:
    if not shape:
        return ()
    return tuple(sum(1 for p in shape if p >= i) for i in range(1, shape[0] + 1))


def expected_first_row(mu: Sequence[int], k: int, length: int) -> tuple[int, ...]:
    mu = list(mu)
    return tuple(k + j + (mu[k + j - 1] if k + j - 1 < len(mu) else 0) for j in range(1, length + 1))


def candidate_q_tableaux(shape: Sequence[int], max_entry: int, k: int | None = None) -> Iterator[Tableau]:
    """Tableaux of the given shape with strictly increasing rows and weakly increasing
    columns, entries in ``1..max_entry`` and, when ``k`` is given, entries of
    column ``i`` at most ``i + k``.

    Built value by value: the cells holding one value form a vertical strip
    (at most one per row), added to the shape grown so far.
    """
    target = list(shape)
    nrows = len(target)

    def grow(current: list[int], value: int, cells: dict) -> Iterator[Tableau]:
        if current == target:
            rows = [[0] * n for n in target]
            for (r, c), v in cells.items():
                rows[r][c] = v
            yield Tableau(tuple(map(tuple, rows)))
            return
        if value > max_entry:
            return
        # extend a set of rows by one cell each, top row first, so that a
        # cell may sit directly below one added in the same step
        def strips(r: int, new: list[int], placed: dict) -> Iterator[tuple[list[int], dict]]:
            if r == nrows:
                yield new, placed
                return
            yield from strips(r + 1, new, placed)
            c = current[r]
            if c < target[r] and (r == 0 or new[r - 1] > c) and (k is None or value <= c + 1 + k):
                grown = new[:]
                grown[r] += 1
                yield from strips(r + 1, grown, {**placed, (r, c): value})

        for new, placed in strips(0, current[:], {}):
            yield from grow(new, value + 1, {**cells, **placed})

    yield from grow([0] * nrows, 1, {})


@dataclass
class NeSeReport:
    shape: MoonShape
    k: int
    P: Tableau | None = None
    expected_shape: tuple[int, ...] = ()
    checks: dict[str, bool] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)
    num_fillings: int = 0
    num_candidates: int = 0

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {
            "shape": self.shape.to_dict(),
            "k": self.k,
            "P": self.P.to_dict() if self.P else None,
            "expected_shape": list(self.expected_shape),
            "checks": dict(self.checks),
            "failures": list(self.failures),
            "fillings": self.num_fillings,
            "candidates": self.num_candidates,
        }


def check_ne_se(S: MoonShape, k: int, fillings: Sequence[Filling] | None = None) -> NeSeReport:
    """Verify the tableau description of all maximal fillings of a stack shape.

    The five checks: ``P`` is constant; its shape is the column-height
    partition of the zeros of ``d_top``; its first row and columns are as
    predicted by the indentation; every ``Q`` has the right type and
    column bound; and ``F -> Q`` is a bijection onto all tableaux allowed
    by those conditions.
    """
    try:
        mu = mu_vector(S)
    except NotAStack as exc:
        raise HypothesisViolated(f"the shape is not a stack shape: {exc}") from exc
    if any(mu[: k + 1]):
        raise HypothesisViolated(f"the first {k + 1} rows must not be indented, got mu = {mu}")
    if fillings is None:
        fillings = enumerate_maximal(S, k)
    rep = NeSeReport(S, k, num_fillings=len(fillings))
    pairs = [(F, eg_of_filling(F)) for F in fillings]
    Ps = {P for _, (P, _) in pairs}
    rep.checks["p_constant"] = len(Ps) == 1
    if not rep.checks["p_constant"]:
        rep.failures.append(f"{len(Ps)} different P tableaux")
    P = pairs[0][1][0] if pairs else Tableau()
    rep.P = P
    rep.expected_shape = column_height_partition(d_top(S, k))
    rep.checks["p_shape"] = P.shape == rep.expected_shape
    if not rep.checks["p_shape"]:
        rep.failures.append(f"P has shape {P.shape}, expected {rep.expected_shape}")
    first = expected_first_row(mu, k, len(P.rows[0]) if P.rows else 0)
    consecutive = all(
        P.rows[i][j] == P.rows[0][j] + i for i in range(len(P.rows)) for j in range(len(P.rows[i]))
    )
    rep.checks["p_first_row"] = (P.rows[0] if P.rows else ()) == first and consecutive
    if not rep.checks["p_first_row"]:
        rep.failures.append(f"P first row {P.rows[:1]}, expected {first}; consecutive columns: {consecutive}")
    q_ok = True
    for F, (_, Q) in pairs:
        u = biword_of_filling(F).u
        if Q.entries() != Counter(u) or any(x > i + k for i, col in enumerate(Q.columns(), 1) for x in col):
            q_ok = False
            rep.failures.append(f"Q {Q.rows} violates type or column bound")
            break
        if not (Q.rows_strict() and Q.columns_weak()):
            q_ok = False
            rep.failures.append(f"Q {Q.rows} is not transpose-semistandard")
            break
    rep.checks["q_conditions"] = q_ok
    image = [Q for _, (_, Q) in pairs]
    cands = set(candidate_q_tableaux(rep.expected_shape, S.num_rows, k))
    rep.num_candidates = len(cands)
    injective = len(set(image)) == len(image)
    onto = set(image) == cands
    rep.checks["bijection"] = injective and onto
    if not injective:
        rep.failures.append("two fillings share a Q tableau")
    if not onto:
        rep.failures.append(
            f"{len(cands - set(image))} candidate tableaux are missed, {len(set(image) - cands)} images are not candidates"
        )
    return rep


# -- the moon shape where the naive generalisation fails ---------------------

COUNTEREXAMPLE_SHAPE = MoonShape(((1, 2, 3), (2, 2, 3), (3, 1, 3), (4, 1, 3)))


def _between(low: Tableau, high: Tableau) -> set[Tableau]:
    out = set()
    for T in candidate_q_tableaux(low.shape, max(x for r in high.rows for x in r)):
        cells = zip((x for r in T.rows for x in r), (x for r in low.rows for x in r), (x for r in high.rows for x in r))
        if all(lo <= x <= hi for x, lo, hi in cells):
            out.add(T)
    return out


def reduced_words(w: Sequence[int]) -> list[tuple[int, ...]]:
    """All reduced words of ``w`` (letters act on positions, as in :func:`evaluate_word`)."""
    w = tuple(w)
    out: list[tuple[int, ...]] = []

    def rec(u: tuple[int, ...], suffix: tuple[int, ...]) -> None:
        descents = [i for i in range(1, len(u)) if u[i - 1] > u[i]]
        if not descents:
            out.append(suffix)
            return
        for i in descents:
            v = list(u)
            v[i - 1], v[i] = v[i], v[i - 1]
            rec(tuple(v), (i,) + suffix)

    rec(w, ())
    return sorted(out)


def eg_preimage_dreams(P: Tableau, Q: Tableau, n: int) -> list[PipeDream]:
    """Pipe dreams whose biword (rows of crosses, reduced word) maps to ``(P, Q)``.

    Found by running the insertion on every reduced word of the permutation
    of ``P``; ``u`` is forced by the entries of ``Q``.
    """
    w = evaluate_word(P.reading_word(), n)
    u = tuple(sorted(Q.entries().elements()))
    out = []
    for v in reduced_words(w):
        try:
            pair = eg_pair(BiWord(u, v))
        except (InsertionUndefined, InvalidBiWord):
            continue
        if pair == (P, Q):
            crosses = [(a, x - a + 1) for a, x in zip(u, v)]
            if all(c >= 1 for _, c in crosses):
                out.append(PipeDream.from_crosses(crosses, n))
    return out


@dataclass
class CounterexampleReport:
    k: int
    P: Tableau
    Q_top: Tableau
    Q_bot: Tableau
    witness: Tableau
    witness_preimages: list[PipeDream]
    image: set[Tableau]
    between: set[Tableau]
    shape: MoonShape = COUNTEREXAMPLE_SHAPE

    @property
    def witness_between(self) -> bool:
        return self.witness in self.between

    @property
    def witness_in_image(self) -> bool:
        return self.witness in self.image

    @property
    def preimages_outside(self) -> list[list[tuple[int, int]]]:
        """For each preimage, its crosses that fall outside the shape."""
        return [sorted(c for c in D.crosses if c not in self.shape) for D in self.witness_preimages]

    @property
    def witness_refuted(self) -> bool:
        # between the extremes, yet every preimage leaves the shape
        return (
            self.witness_between
            and not self.witness_in_image
            and bool(self.witness_preimages)
            and all(self.preimages_outside)
        )

    @property
    def sets_differ(self) -> bool:
        return self.image != self.between

    def to_dict(self) -> dict:
        key = lambda T: T.rows
        return {
            "k": self.k,
            "P": self.P.to_dict(),
            "Q_top": self.Q_top.to_dict(),
            "Q_bot": self.Q_bot.to_dict(),
            "witness": self.witness.to_dict(),
            "witness_between": self.witness_between,
            "witness_in_image": self.witness_in_image,
            "witness_preimages": [D.label() for D in self.witness_preimages],
            "preimage_crosses_outside": [[list(c) for c in cs] for cs in self.preimages_outside],
            "witness_refuted": self.witness_refuted,
            "image": [T.to_dict() for T in sorted(self.image, key=key)],
            "between": [T.to_dict() for T in sorted(self.between, key=key)],
            "between_not_image": [T.to_dict() for T in sorted(self.between - self.image, key=key)],
            "image_not_between": [T.to_dict() for T in sorted(self.image - self.between, key=key)],
            "sets_differ": self.sets_differ,
        }


def check_counterexample(k: int = 1) -> CounterexampleReport:
    """Tableaux of the four-row moon shape where betweenness of ``Q`` fails.

    The witness ``Q = 124/3`` lies between ``Q_top`` and ``Q_bot``, but the
    pipe dream it comes from (together with the common ``P``) has a cross
    outside the shape, so no filling maps to it.
    """
    S = COUNTEREXAMPLE_SHAPE
    fillings = enumerate_maximal(S, k)
    Ps = set()
    image = set()
    for F in fillings:
        P, Q = eg_of_filling(F)
        Ps.add(P)
        image.add(Q)
    if len(Ps) != 1:
        raise AssertionError(f"{len(Ps)} different P tableaux on the counterexample shape")
    P = Ps.pop()
    _, q_top = eg_of_filling(d_top(S, k))
    _, q_bot = eg_of_filling(d_bot(S, k))
    witness = Tableau(((1, 2, 4), (3,)))
    return CounterexampleReport(
        k=k,
        P=P,
        Q_top=q_top,
        Q_bot=q_bot,
        witness=witness,
        witness_preimages=eg_preimage_dreams(P, witness, S.ambient),
        image=image,
        between=_between(q_top, q_bot),
    )


def reading_word_check(F: Filling) -> bool:
    """The reading word of ``P`` is reduced and multiplies out to the pipe dream's permutation."""
    D = from_filling(F)
    P, _ = eg_of_filling(F)
    word = P.reading_word()
    return is_reduced_word(word, D.n) and evaluate_word(word, D.n) == evaluate_word(word_of(D), D.n)
