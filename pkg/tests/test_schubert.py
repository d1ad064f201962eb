import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import determinant_expansion
from moonpipes.pipedream import enumerate_rc, identity, longest, permutations, shape_permutation
from moonpipes.schubert import (
    DivisionRemainder,
    NonIntegralProduct,
    Polynomial,
    _divide_linear,
    bareiss_det,
    catalan,
    divided_difference,
    expected_term_count,
    has_pattern_brute,
    is_vexillary,
    ktriangulation_count,
    lgv_determinant,
    schubert_agreement,
    schubert_divided_difference,
    schubert_from_rc,
    triangulation_product,
)
from moonpipes.shape import enumerate_moon_shapes

x1 = Polynomial.monomial([1])
x2 = Polynomial.monomial([0, 1])
x3 = Polynomial.monomial([0, 0, 1])


def staircase_monomial(n):
    return Polynomial.monomial(range(n - 1, 0, -1))


def test_small_examples():
    for n in (1, 3, 5):
        assert schubert_from_rc(identity(n)) == 1
        assert schubert_divided_difference(identity(n)) == 1
    assert schubert_from_rc((2, 1, 3)) == x1
    for n in (2, 3, 4, 5):
        assert schubert_from_rc(longest(n)) == staircase_monomial(n)
        assert schubert_divided_difference(longest(n)) == staircase_monomial(n)
    assert schubert_from_rc((1, 3, 2)) == x1 + x2
    assert schubert_from_rc((2, 1, 4, 3)) == x1 * x1 + x1 * x2 + x1 * x3


@pytest.mark.parametrize("w", permutations(4), ids=str)
def test_agreement_s4(w):
    assert schubert_from_rc(w) == schubert_divided_difference(w)


def test_agreement_s5_sample():
    sample = random.Random(11).sample(permutations(5), 20)
    assert schubert_agreement(sample) == []


@pytest.mark.parametrize("w", permutations(5)[::7], ids=str)
def test_term_count_is_rc_size(w):
    S = schubert_from_rc(w)
    assert S.term_count() == len(enumerate_rc(w)) == expected_term_count(w)
    assert all(c > 0 for c in S.terms.values())


def test_divided_difference_basics():
    assert divided_difference(x1, 1) == 1
    assert divided_difference(x1 * x2, 1) == 0
    assert divided_difference(x1 * x1, 1) == x1 + x2
    with pytest.raises(DivisionRemainder):
        _divide_linear(x1, 1)
    with pytest.raises(ValueError):
        schubert_divided_difference((1, 2, 3, 4, 5, 7, 6))


@settings(max_examples=100, deadline=None)
@given(st.dictionaries(st.tuples(*[st.integers(0, 3)] * 3), st.integers(-4, 4), max_size=6), st.integers(1, 3))
def test_divided_difference_is_exact(terms, i):
    f = Polynomial(terms)
    g = divided_difference(f, i)
    lhs = f - f.swap(i)
    xi = Polynomial.monomial([0] * (i - 1) + [1])
    xj = Polynomial.monomial([0] * i + [1])
    assert g * (xi - xj) == lhs


def test_printing():
    assert str(x1 * x1 * x2 + x1 * x3) == "x1^2*x2 + x1*x3"
    assert str(Polynomial()) == "0"
    assert str(Polynomial.constant(1)) == "1"
    assert str(x1 - x2 - x2) == "x1 - 2*x2"
    assert (x1 * x1 * x2 + x1 * x3).to_dict() == {
        "terms": [{"exps": {"1": 2, "2": 1}, "coeff": 1}, {"exps": {"1": 1, "3": 1}, "coeff": 1}]
    }


def test_polynomial_arithmetic():
    f = x1 + x2
    assert f * f == x1 * x1 + Polynomial.monomial([1, 1], 2) + x2 * x2
    assert f.evaluate([2, 3]) == 5
    assert f.swap(1) == f
    assert (f - f) == 0 and not (f - f)
    assert hash(x1 + x2) == hash(x2 + x1)


def test_vexillary():
    assert not is_vexillary((2, 1, 4, 3))
    assert is_vexillary((4, 2, 5, 1, 3))
    for n in range(1, 7):
        for w in permutations(n):
            assert is_vexillary(w) == (not has_pattern_brute(w, (2, 1, 4, 3)))


def test_shape_permutations_are_vexillary():
    for M in enumerate_moon_shapes(4, 4):
        for k in (0, 1, 2):
            assert is_vexillary(shape_permutation(M, k))


def test_catalan_and_determinants():
    assert [catalan(m) for m in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]
    assert catalan(-1) == 0
    assert lgv_determinant(7, 2) == 14 and lgv_determinant(8, 2) == 84
    assert bareiss_det([]) == 1
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([[1, 2], [2, 4]]) == 0


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_leibniz(matrix):
    assert bareiss_det(matrix) == determinant_expansion(matrix)


@pytest.mark.parametrize(
    "n,k,value", [(5, 1, 5), (6, 1, 14), (7, 1, 42), (7, 2, 14), (8, 2, 84), (4, 1, 2), (3, 1, 1), (5, 2, 1)]
)
def test_ktriangulation_points(n, k, value):
    for method in ("formula", "determinant", "enumerate"):
        assert ktriangulation_count(n, k, method) == value


def test_ktriangulation_methods_agree():
    for n in range(3, 9):
        for k in (1, 2):
            if n <= 2 * k:
                continue
            counts = {m: ktriangulation_count(n, k, m) for m in ("formula", "determinant", "enumerate")}
            assert len(set(counts.values())) == 1, (n, k, counts)


def test_square_reading_is_not_integral():
    assert triangulation_product(5, 1, "square") == Fraction(25, 3)
    with pytest.raises(NonIntegralProduct) as info:
        ktriangulation_count(5, 1, reading="square")
    assert info.value.value == Fraction(25, 3)
    with pytest.raises(ValueError):
        ktriangulation_count(4, 2)
    with pytest.raises(ValueError):
        ktriangulation_count(5, 1, "guess")
    with pytest.raises(ValueError):
        triangulation_product(5, 1, "round")
