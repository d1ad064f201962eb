"""Schubert polynomials, vexillarity and the k-triangulation counting identity.

Polynomials are exact: integer coefficients keyed by exponent tuples
(entry ``i`` is the exponent of ``x_{i+1}``, trailing zeros dropped).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .pipedream import (
    Permutation,
    check_permutation,
    enumerate_rc,
    longest,
    standardize,
)

Monomial = tuple[int, ...]


class DivisionRemainder(ArithmeticError):
    """A divided difference left a remainder, which only an arithmetic bug can cause."""


class NonIntegralProduct(ArithmeticError):
    def __init__(self, value: Fraction, n: int, k: int, reading: str):
        self.value = value
        super().__init__(f"product over the {reading} index set at n={n}, k={k} is {value}, not an integer")


def _trim(exps: Iterable[int]) -> Monomial:
    exps = list(exps)
    while exps and exps[-1] == 0:
        exps.pop()
    return tuple(exps)


@dataclass(frozen=True)
class Polynomial:
    terms: Mapping[Monomial, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean: dict[Monomial, int] = {}
        for m, c in self.terms.items():
            m = _trim(m)
            clean[m] = clean.get(m, 0) + c
        object.__setattr__(self, "terms", {m: c for m, c in clean.items() if c})

    @classmethod
    def monomial(cls, exps: Iterable[int], coeff: int = 1) -> "Polynomial":
        return cls({tuple(exps): coeff})

    @classmethod
    def constant(cls, c: int) -> "Polynomial":
        return cls({(): c})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Polynomial.constant(other)
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        out: dict[Monomial, int] = {}
        for (m1, c1), (m2, c2) in itertools.product(self.terms.items(), other.terms.items()):
            size = max(len(m1), len(m2))
            m = tuple(
                (m1[i] if i < len(m1) else 0) + (m2[i] if i < len(m2) else 0) for i in range(size)
            )
            out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(out)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def term_count(self) -> int:
        """Number of monomials counted with multiplicity (sum of coefficients)."""
        return sum(self.terms.values())

    def evaluate(self, xs: Sequence[int]) -> int:
        total = 0
        for m, c in self.terms.items():
            v = c
            for i, e in enumerate(m):
                v *= xs[i] ** e
            total += v
        return total

    def swap(self, i: int) -> "Polynomial":
        """Exchange ``x_i`` and ``x_{i+1}``."""
        out = {}
        for m, c in self.terms.items():
            e = list(m) + [0] * max(0, i + 1 - len(m))
            e[i - 1], e[i] = e[i], e[i - 1]
            out[tuple(e)] = c
        return Polynomial(out)

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        """Graded lexicographic order, largest first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = [f"x{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(m, start=1) if e]
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")

    def to_dict(self) -> dict:
        return {
            "terms": [
                {"exps": {str(i): e for i, e in enumerate(m, start=1) if e}, "coeff": c}
                for m, c in self.sorted_terms()
            ]
        }


SchubertPolynomial = Polynomial


def schubert_from_rc(w: Sequence[int], *, max_length: int = 16) -> Polynomial:
    """Sum of ``x^D`` over the reduced pipe dreams ``D`` of ``w``."""
    w = check_permutation(w)
    terms: dict[Monomial, int] = {}
    for D in enumerate_rc(w, max_length=max_length):
        m = _trim(D.row_counts())
        terms[m] = terms.get(m, 0) + 1
    return Polynomial(terms)


def _divide_linear(g: Polynomial, i: int) -> Polynomial:
    """Exact quotient of ``g`` by ``x_i - x_{i+1}`` (synthetic division in ``x_i``)."""
    # group by the exponent of x_i; each coefficient is a polynomial in the other variables
    by_deg: dict[int, dict[Monomial, int]] = {}
    for m, c in g.terms.items():
        e = list(m) + [0] * max(0, i - len(m))
        d = e[i - 1]
        e[i - 1] = 0
        by_deg.setdefault(d, {})[tuple(e)] = c
    if not by_deg:
        return Polynomial()
    top = max(by_deg)
    coeffs = [Polynomial(by_deg.get(d, {})) for d in range(top + 1)]
    b = Polynomial.monomial([0] * i + [1])  # x_{i+1}
    quotient: list[Polynomial] = [Polynomial()] * top
    carry = Polynomial()
    for d in range(top, 0, -1):
        carry = coeffs[d] + b * carry
        quotient[d - 1] = carry
    remainder = coeffs[0] + b * carry
    if remainder:
        raise DivisionRemainder(f"dividing by x{i} - x{i + 1} left remainder {remainder}")
    xi = [0] * (i - 1) + [1]
    out = Polynomial()
    for d, q in enumerate(quotient):
        out = out + q * Polynomial.monomial([e * d for e in xi])
    return out


def divided_difference(f: Polynomial, i: int) -> Polynomial:
    return _divide_linear(f - f.swap(i), i)


def schubert_divided_difference(w: Sequence[int], *, max_n: int = 6) -> Polynomial:
    """Schubert polynomial by divided differences applied to ``x_1^{n-1} ... x_{n-1}``."""
    w = list(standardize(check_permutation(w)))
    n = len(w)
    if n > max_n:
        raise ValueError(f"n = {n} exceeds the divided-difference guard {max_n}")
    # climb from w to w0 by right multiplication with ascents
    path = []
    u = w[:]
    while True:
        ascent = next((i for i in range(1, n) if u[i - 1] < u[i]), None)
        if ascent is None:
            break
        u[ascent - 1], u[ascent] = u[ascent], u[ascent - 1]
        path.append(ascent)
    assert tuple(u) == longest(n)
    f = Polynomial.monomial(range(n - 1, 0, -1))
    for i in reversed(path):
        f = divided_difference(f, i)
    return f


def is_vexillary(w: Sequence[int]) -> bool:
    """True iff ``w`` avoids the pattern 2143."""
    w = check_permutation(w)
    n = len(w)
    for j in range(n):
        for k in range(j + 1, n):
            if w[k] <= w[j]:
                continue
            # 2143 at i < j < k < l means w_j < w_i < w_l < w_k; take the smallest w_i
            lows = [w[i] for i in range(j) if w[j] < w[i] < w[k]]
            if not lows:
                continue
            lo = min(lows)
            if any(lo < w[l] < w[k] for l in range(k + 1, n)):
                return False
    return True


def has_pattern_brute(w: Sequence[int], pattern: Sequence[int]) -> bool:
    """Plain subsequence scan, the oracle for :func:`is_vexillary`."""
    p = len(pattern)
    for idx in itertools.combinations(range(len(w)), p):
        vals = [w[i] for i in idx]
        ranks = [sorted(vals).index(v) + 1 for v in vals]
        if ranks == list(pattern):
            return True
    return False


# -- counting ---------------------------------------------------------------

@lru_cache(maxsize=None)
def catalan(m: int) -> int:
    if m < 0:
        return 0
    if m == 0:
        return 1
    return sum(catalan(i) * catalan(m - 1 - i) for i in range(m))


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for p in range(n - 1):
        if a[p][p] == 0:
            swap = next((r for r in range(p + 1, n) if a[r][p] != 0), None)
            if swap is None:
                return 0
            a[p], a[swap] = a[swap], a[p]
            sign = -sign
        for i in range(p + 1, n):
            for j in range(p + 1, n):
                a[i][j] = (a[i][j] * a[p][p] - a[i][p] * a[p][j]) // prev
        prev = a[p][p]
    return sign * a[-1][-1]


def lgv_determinant(n: int, k: int) -> int:
    return bareiss_det([[catalan(n - i - j) for j in range(1, k + 1)] for i in range(1, k + 1)])


def triangulation_product(n: int, k: int, reading: str = "triangular") -> Fraction:
    """The product of ``(i + j + 2k) / (i + j)`` over the chosen index set.

    ``"triangular"``: ``1 <= i <= j <= n - 2k - 1``.  ``"square"``:
    ``1 <= i, j <= n - 2k - 1``, which is not integral in general and is
    kept only for comparison.
    """
    m = n - 2 * k - 1
    if reading == "triangular":
        pairs = ((i, j) for i in range(1, m + 1) for j in range(i, m + 1))
    elif reading == "square":
        pairs = ((i, j) for i in range(1, m + 1) for j in range(1, m + 1))
    else:
        raise ValueError(f"unknown reading {reading!r}")
    value = Fraction(1)
    for i, j in pairs:
        value *= Fraction(i + j + 2 * k, i + j)
    return value


def ktriangulation_count(n: int, k: int, method: str = "formula", *, reading: str = "triangular") -> int:
    """Number of k-triangulations of the n-gon.

    ``method`` is ``"formula"`` (exact product, must be integral),
    ``"determinant"`` (Catalan determinant) or ``"enumerate"`` (maximal
    fillings of the staircase).
    """
    if k < 1 or n <= 2 * k:
        raise ValueError("need k >= 1 and n > 2k")
    if method == "formula":
        value = triangulation_product(n, k, reading)
        if value.denominator != 1:
            raise NonIntegralProduct(value, n, k, reading)
        return value.numerator
    if method == "determinant":
        return lgv_determinant(n, k)
    if method == "enumerate":
        from .filling import count_maximal
        from .shape import staircase

        return count_maximal(staircase(n), k)
    raise ValueError(f"unknown method {method!r}")


def schubert_agreement(perms: Iterable[Sequence[int]]) -> list[tuple[Permutation, Polynomial, Polynomial]]:
    """Permutations where the two constructions differ (empty when all agree)."""
    bad = []
    for w in perms:
        a, b = schubert_from_rc(w), schubert_divided_difference(w)
        if a != b:
            bad.append((tuple(w), a, b))
    return bad


def expected_term_count(w: Sequence[int]) -> int:
    """Value of the Schubert polynomial at all ones, i.e. the number of reduced pipe dreams."""
    return schubert_divided_difference(w).evaluate([1] * len(w))


__all__ = [
    "Polynomial",
    "SchubertPolynomial",
    "DivisionRemainder",
    "NonIntegralProduct",
    "schubert_from_rc",
    "schubert_divided_difference",
    "divided_difference",
    "is_vexillary",
    "has_pattern_brute",
    "catalan",
    "bareiss_det",
    "lgv_determinant",
    "triangulation_product",
    "ktriangulation_count",
    "schubert_agreement",
    "expected_term_count",
]
