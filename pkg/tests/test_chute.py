import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import chutable_brute
from moonpipes.chute import (
    ChutableRect,
    NotAnElbow,
    NotChutable,
    NotClosed,
    apply_chute,
    apply_inverse_chute,
    chute_closure,
    chute_edges,
    chute_poset,
    find_chutable,
    find_inverse_chutable,
    flip,
    flip_edges,
    flip_graph,
    flip_graph_dot,
    interval_check,
    is_lattice,
    order_interval,
    poset_from_relations,
    rc_poset,
    two_row_comparison,
)
from moonpipes.filling import d_bot, d_top, enumerate_maximal
from moonpipes.pipedream import (
    PipeDream,
    bb_bot,
    bb_top,
    enumerate_rc,
    from_filling,
    identity,
    is_reduced,
    longest,
    permutation_of,
    permutations,
)
from moonpipes.shape import MoonShape, enumerate_moon_shapes, staircase

TEN = MoonShape(((1, 2, 3), (2, 1, 4), (3, 1, 4), (4, 2, 3)))
W_TEN = (1, 2, 6, 4, 5, 3)
S4_DREAMS = [D for w in permutations(4) for D in enumerate_rc(w)]


def rect_tuple(r: ChutableRect):
    return (r.top_row, r.bottom_row, r.left_col, r.right_col)


def test_local_detection():
    full = PipeDream.from_crosses(staircase(5).cells, 5)
    assert find_chutable(full) == [] and find_inverse_chutable(full) == []
    assert find_chutable(PipeDream.from_crosses([(1, 1), (1, 2)])) == []
    rects = find_chutable(PipeDream.from_crosses([(1, 2)]))
    assert [rect_tuple(r) for r in rects] == [(1, 2, 1, 2)]


@pytest.mark.parametrize("D", S4_DREAMS, ids=lambda D: D.label())
def test_rectangles_match_brute_force(D):
    crosses = set(D.crosses)
    assert {rect_tuple(r) for r in find_chutable(D)} == chutable_brute(crosses, D.n + 1)
    assert {rect_tuple(r) for r in find_inverse_chutable(D)} == chutable_brute(crosses, D.n + 1, inverse=True)


@settings(max_examples=150, deadline=None)
@given(st.sets(st.sampled_from(staircase(6).cells)))
def test_rectangles_match_brute_force_on_any_cross_set(crosses):
    D = PipeDream.from_crosses(crosses, 6)
    assert {rect_tuple(r) for r in find_chutable(D)} == chutable_brute(set(crosses), 7)
    assert {rect_tuple(r) for r in find_inverse_chutable(D)} == chutable_brute(set(crosses), 7, inverse=True)


@pytest.mark.parametrize("D", S4_DREAMS, ids=lambda D: D.label())
def test_moves_preserve_permutation_and_invert(D):
    w = permutation_of(D)
    for r in find_chutable(D):
        E = apply_chute(D, r)
        assert permutation_of(E.with_ambient(D.n)) == w and is_reduced(E.with_ambient(D.n))
        assert apply_inverse_chute(E, r) == D
    for r in find_inverse_chutable(D):
        E = apply_inverse_chute(D, r).with_ambient(D.n)
        assert permutation_of(E) == w and is_reduced(E)
        assert apply_chute(E, r) == D


def test_not_chutable():
    D = PipeDream.from_crosses([(1, 1), (1, 2)])
    with pytest.raises(NotChutable):
        apply_chute(D, ChutableRect(1, 2, 1, 2))
    with pytest.raises(NotChutable):
        apply_inverse_chute(D, ChutableRect(1, 2, 1, 2))


def test_ten_fillings_within_shape():
    fillings = enumerate_maximal(TEN, 1)
    bot, top = d_bot(TEN, 1), d_top(TEN, 1)
    for F in fillings:
        assert bool(find_chutable(F)) == (F != bot)
        assert bool(find_inverse_chutable(F)) == (F != top)
    P = chute_poset(fillings, TEN)
    assert len(P) == 10
    assert P.maximal() == [from_filling(top)]
    assert P.minimal() == [from_filling(bot)]


def test_ten_poset():
    P = rc_poset(W_TEN)
    assert P.maximal() == [bb_top(W_TEN)]
    assert P.minimal() == [bb_bot(W_TEN)]
    assert P.leq(bb_bot(W_TEN), bb_top(W_TEN))
    assert len(rc_poset(identity(4))) == 1
    dreams = {from_filling(F) for F in enumerate_maximal(TEN, 1)}
    assert set(P.interval(from_filling(d_bot(TEN, 1)), from_filling(d_top(TEN, 1)))) == dreams
    assert P.to_dot(highlight=dreams).count("fillcolor") == 10


@pytest.mark.parametrize("w", permutations(5), ids=str)
def test_unique_extremes_s5(w):
    P = rc_poset(w)
    assert P.maximal() == [bb_top(w)]
    assert P.minimal() == [bb_bot(w)]


def test_poset_is_acyclic_and_covers_generate_it():
    P = rc_poset((1, 4, 3, 2))
    for hi, lo in P.covers:
        assert hi != lo and not P.leq(P.elements[hi], P.elements[lo])
    assert {(hi, lo) for hi, lo in P.covers} <= {(i, j) for i, j in P.relations()}
    assert {(i, j) for i, j in P.moves} <= P.relations()


def test_not_closed():
    top = bb_top(W_TEN)
    with pytest.raises(NotClosed):
        chute_poset([top])
    assert len(chute_poset([top], check_closed=False)) == 1


def test_lattice_examples():
    chain = poset_from_relations(4, [(0, 1), (1, 2), (2, 3)])
    assert is_lattice(chain)
    diamond = poset_from_relations(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    assert is_lattice(diamond)
    bowtie = poset_from_relations(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
    verdict = is_lattice(bowtie)
    assert not verdict and verdict.witness is not None
    # bowtie with a top and a bottom added is still no lattice
    closed = poset_from_relations(6, [(4, 0), (4, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 5), (3, 5)])
    assert not is_lattice(closed)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_chute_posets_are_lattices(n):
    # a failure here would be a genuine counterexample worth reporting
    for w in permutations(n):
        assert is_lattice(rc_poset(w)), w


def test_intervals():
    assert interval_check(TEN, 1).ok
    assert interval_check(staircase(5), 1).ok
    assert interval_check(MoonShape(((1, 1, 1),)), 1).ok
    for M in enumerate_moon_shapes(3, 4):
        for k in (1, 2):
            rep = interval_check(M, k)
            assert rep.ok and not rep.missing and not rep.extra


def test_order_interval_against_poset():
    for w in [(1, 4, 3, 2), (2, 4, 1, 3), (1, 3, 5, 2, 4), W_TEN]:
        P = rc_poset(w)
        for lo in P.elements[:6]:
            for hi in P.elements[-6:]:
                assert order_interval(lo, hi) == set(P.interval(lo, hi)) if P.leq(lo, hi) else not order_interval(lo, hi)


def test_closure_within_shape():
    for M in enumerate_moon_shapes(3, 4):
        for k in (1, 2):
            dreams = {from_filling(F) for F in enumerate_maximal(M, k)}
            top = from_filling(d_top(M, k))
            assert set(chute_closure(top, M)) == dreams
            bot = from_filling(d_bot(M, k))
            assert set(chute_closure(bot, M, inverse=True)) == dreams


def test_flips():
    full = PipeDream.from_crosses(staircase(4).cells, 4)
    assert flip_edges([full]) == set()
    assert flip_graph(enumerate_rc(longest(4))) == {full: set()}
    D = bb_top(W_TEN)
    with pytest.raises(NotAnElbow):
        flip(D, (1, 3))
    for D in S4_DREAMS:
        for i in range(1, D.n):
            for j in range(1, D.n - i + 1):
                if D.has_cross(i, j):
                    continue
                E = flip(D, (i, j))
                if E is None:
                    continue
                assert permutation_of(E) == permutation_of(D) and is_reduced(E)
                (moved,) = D.crosses - E.crosses
                assert flip(E, moved) == D


@pytest.mark.parametrize("w", permutations(4), ids=str)
def test_chute_edges_are_flip_edges(w):
    dreams = enumerate_rc(w)
    assert chute_edges(dreams) <= flip_edges(dreams)


def test_flip_graph_dot():
    text = flip_graph_dot(enumerate_rc((1, 4, 3, 2)))
    assert text.startswith("graph flips {") and " -- " in text


def test_two_row_order_differs_for_1432():
    rep = two_row_comparison((1, 4, 3, 2))
    assert rep["size"] == 5 and not rep["same_order"]
    assert two_row_comparison((2, 1, 3))["same_order"]
