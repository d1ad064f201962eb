import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import longest_chain_brute, maximal_fillings_brute
from moonpipes.chute import OracleDisagreement, chute_successors, inverse_chute_successors
from moonpipes.filling import (
    ChainBoundExceeded,
    Filling,
    all_ones,
    all_zeros,
    d_bot,
    d_top,
    enumerate_maximal,
    fixpoint_from,
    geometric_disagreements,
    geometric_extreme,
    greedy_filling,
    is_maximal,
    longest_ne_chain,
    padded_ferrers,
    parse_filling,
    zeros_per_row,
)
from moonpipes.pipedream import PipeDream, from_filling
from moonpipes.shape import MoonShape, enumerate_moon_shapes, is_ferrers, staircase

TEN = MoonShape(((1, 2, 3), (2, 1, 4), (3, 1, 4), (4, 2, 3)))
EIGHT_ROW = MoonShape(((1, 4, 7), (2, 3, 7), (3, 3, 7), (4, 1, 8), (5, 1, 8), (6, 2, 8), (7, 2, 8), (8, 4, 7)))
EIGHT_ROW_TOP = """
...1100.
..11000.
..11000.
11100000
11100000
.1111001
.1111111
...1111.
"""
EIGHT_ROW_BOT = """
...1111.
..11111.
..10011.
11000111
11000111
.0000011
.0000011
...0011.
"""
SHAPES_33 = enumerate_moon_shapes(3, 3)
SHAPES_44 = enumerate_moon_shapes(4, 4)


def test_eight_row_extremes():
    top, bot = parse_filling(EIGHT_ROW_TOP), parse_filling(EIGHT_ROW_BOT)
    assert top.shape == bot.shape == EIGHT_ROW
    assert d_top(EIGHT_ROW, 2) == top
    assert d_bot(EIGHT_ROW, 2) == bot
    assert longest_ne_chain(top) == longest_ne_chain(bot) == 2
    assert len(top.zeros) == len(bot.zeros) == 20


def test_eight_row_rectangle_readings():
    report = geometric_disagreements(EIGHT_ROW, 2)
    assert report["corner"] == {"top": [], "bot": []}
    # the side-neighbour reading misses the lone one at (4, 3)
    assert (4, 3) in report["edge"]["top"]


def test_ten_fillings():
    fillings = enumerate_maximal(TEN, 1, method="both")
    assert len(fillings) == 10
    assert len({len(F.zeros) for F in fillings}) == 1
    assert d_top(TEN, 1) in fillings and d_bot(TEN, 1) in fillings
    by_rows = {}
    for F in fillings:
        by_rows.setdefault(zeros_per_row(F), []).append(F)
    for r, group in by_rows.items():
        assert enumerate_maximal(TEN, 1, r) == group


def test_five_row_filling():
    shape = MoonShape(((1, 2, 3), (2, 1, 4), (3, 1, 4), (4, 2, 4), (5, 2, 3)))
    zeros = {(1, 3), (2, 3), (2, 4), (3, 1), (3, 3), (4, 2), (4, 3)}
    F = Filling(shape, frozenset(c for c in shape.cells if c not in zeros))
    assert zeros_per_row(F) == (1, 2, 2, 2, 0)
    assert from_filling(F).crosses == frozenset(zeros)
    k = longest_ne_chain(F)
    assert is_maximal(F, k)
    assert F in enumerate_maximal(shape, k)


def test_trivial_cases():
    cell = MoonShape(((1, 1, 1),))
    assert enumerate_maximal(cell, 1) == [all_ones(cell)]
    assert longest_ne_chain(all_zeros(TEN)) == 0
    assert not is_maximal(all_zeros(TEN), 1)
    bar = MoonShape(((1, 1, 4),))
    assert d_top(bar, 1) == d_bot(bar, 1) == all_ones(bar)
    assert len(enumerate_maximal(staircase(5), 1)) == 5
    assert enumerate_maximal(TEN, 0) == [all_zeros(TEN)]
    for c in TEN.cells:
        assert longest_ne_chain(Filling(TEN, frozenset([c]))) == 1


def test_chain_bound_exceeded():
    F = all_ones(TEN)
    assert longest_ne_chain(F) == 2  # no 3x3 square fits in the shape
    with pytest.raises(ChainBoundExceeded):
        is_maximal(F, 1)
    assert longest_ne_chain(all_ones(staircase(7))) == 3


def test_filling_text_round_trip():
    for F in enumerate_maximal(EIGHT_ROW, 2, method="chute")[:20]:
        assert parse_filling(F.render()) == F
    with pytest.raises(ValueError):
        parse_filling("1x\n11")
    with pytest.raises(ValueError):
        Filling(TEN, frozenset([(1, 1)]))


@pytest.mark.parametrize("M", SHAPES_33, ids=lambda M: str(M.rows))
def test_enumeration_matches_brute_force_small(M):
    for k in (1, 2):
        fast = {F.ones for F in enumerate_maximal(M, k, method="both")}
        assert fast == maximal_fillings_brute(set(M.cells), k)


@pytest.mark.parametrize(
    "M", [M for M in SHAPES_44 if 10 <= len(M) <= 11][::9], ids=lambda M: str(M.rows)
)
def test_enumeration_matches_brute_force_medium(M):
    for k in (1, 2):
        fast = {F.ones for F in enumerate_maximal(M, k)}
        assert fast == maximal_fillings_brute(set(M.cells), k)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(SHAPES_44), st.randoms(use_true_random=False))
def test_longest_chain_matches_brute_force(M, rnd):
    ones = frozenset(c for c in M.cells if rnd.random() < 0.6)
    assert longest_ne_chain(Filling(M, ones)) == longest_chain_brute(ones, set(M.cells))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SHAPES_44), st.integers(0, 3))
def test_extremes_are_unique_fixpoints(M, k):
    fillings = enumerate_maximal(M, k)
    assert d_top(M, k) in fillings and d_bot(M, k) in fillings
    assert is_maximal(d_top(M, k), k) and is_maximal(d_bot(M, k), k)
    tops = [F for F in fillings if next(inverse_chute_successors(F.zero_rows(), M), None) is None]
    bots = [F for F in fillings if next(chute_successors(F.zero_rows(), M), None) is None]
    assert tops == [d_top(M, k)] and bots == [d_bot(M, k)]
    assert len({len(F.zeros) for F in fillings}) == 1
    # seed independence: every filling flows to the same fixpoints
    for F in random.Random(0).sample(fillings, min(5, len(fillings))):
        assert fixpoint_from(F, inverse=True) == d_top(M, k)
        assert fixpoint_from(F, inverse=False) == d_bot(M, k)


@pytest.mark.parametrize("order", ["rows", "columns"])
def test_greedy_seeds_are_maximal(order):
    for M in SHAPES_44[::5]:
        for k in (1, 2):
            assert is_maximal(greedy_filling(M, k, order), k)
    with pytest.raises(ValueError):
        greedy_filling(TEN, 1, "diagonal")


def test_purity_of_staircase():
    # every maximal filling has the same number of zeros, but the row
    # distribution is not fixed
    top, bot = d_top(staircase(5), 1), d_bot(staircase(5), 1)
    assert zeros_per_row(top) == (2, 1, 0, 0)
    assert zeros_per_row(bot) == (0, 2, 1, 0)
    assert {len(F.zeros) for F in enumerate_maximal(staircase(5), 1)} == {3}


def test_ferrers_padding_keeps_zero_sets():
    for M in SHAPES_44:
        if not is_ferrers(M):
            continue
        for k in (1, 2):
            padded = padded_ferrers(M, k)
            assert {F.zeros for F in enumerate_maximal(M, k)} == {F.zeros for F in enumerate_maximal(padded, k)}


def test_methods_agree_on_5x5_sample():
    for M in enumerate_moon_shapes(5, 5)[::97]:
        for k in (1, 2):
            enumerate_maximal(M, k, method="both")


def test_bad_arguments():
    with pytest.raises(ValueError):
        enumerate_maximal(TEN, -1)
    with pytest.raises(ValueError):
        enumerate_maximal(TEN, 1, method="magic")
    with pytest.raises(ValueError):
        geometric_extreme(TEN, 1, top=True, reading="other")
