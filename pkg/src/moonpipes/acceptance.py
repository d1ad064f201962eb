"""The fourteen reproduction checks, each timed against its budget.

Every check returns a :class:`CriterionResult`.  A check passes only if
its assertion holds and it finishes within its time budget.  Findings
(lattice counterexamples, oracle disagreements) are collected separately:
criterion 7 passes on completion whatever the verdicts are.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import chute as _chute
from .bijections import jonsson_check, stack_classes
from .chute import (
    chute_edges,
    chute_successors,
    find_chutable,
    find_inverse_chutable,
    flip_edges,
    interval_check,
    inverse_chute_successors,
    is_lattice,
    rc_poset,
)
from .eg import HypothesisViolated, Tableau, check_counterexample, check_ne_se, mu_vector
from .filling import Filling, d_bot, d_top, enumerate_maximal
from .pipedream import (
    PipeDream,
    bb_bot,
    bb_top,
    enumerate_rc,
    evaluate_word,
    from_filling,
    is_reduced,
    permutation_of,
    permutations,
    shape_permutation,
    standardize,
    traced_permutation,
    word_of,
)
from .schubert import (
    NonIntegralProduct,
    is_vexillary,
    ktriangulation_count,
    schubert_divided_difference,
    schubert_from_rc,
)
from .shape import MoonShape, enumerate_moon_shapes, is_stack

TEN_FILLINGS_SHAPE = MoonShape(((1, 2, 3), (2, 1, 4), (3, 1, 4), (4, 2, 3)))
SEVEN_CROSSES = ((1, 3), (2, 3), (2, 4), (3, 1), (3, 3), (4, 2), (4, 3))


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float
    budget: float | None = None
    findings: list = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        budget = f" (budget {self.budget:g}s)" if self.budget else ""
        return f"[{status}] {self.number:2d}. {self.title}: {self.detail} [{self.seconds:.2f}s{budget}]"

    def to_dict(self) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "passed": self.passed,
            "detail": self.detail,
            "seconds": round(self.seconds, 3),
            "budget": self.budget,
            "findings": self.findings,
        }


Check = Callable[[], "tuple[bool, str, list]"]
REGISTRY: dict[int, tuple[str, float | None, Check]] = {}


def criterion(number: int, title: str, budget: float | None = None):
    def register(fn: Check) -> Check:
        REGISTRY[number] = (title, budget, fn)
        return fn

    return register


@criterion(1, "ten fillings", 1.0)
def _ten_fillings():
    n = len(enumerate_maximal(TEN_FILLINGS_SHAPE, 1))
    return n == 10, f"|F01ne(M,1)| = {n}", []


@criterion(2, "pipe dream word and permutation")
def _seven_cross_dream():
    D = PipeDream.from_crosses(SEVEN_CROSSES)
    word = word_of(D)
    traced = traced_permutation(D)
    evaluated = evaluate_word(word, D.n)
    ok = word == (3, 5, 4, 5, 3, 6, 5) and traced == evaluated == (1, 2, 6, 4, 7, 5, 3)
    return ok, f"word {word}, traced {traced}, evaluated {evaluated}", []


@criterion(3, "interval of the ten fillings")
def _ten_interval():
    M = TEN_FILLINGS_SHAPE
    w = shape_permutation(M, 1)
    P = rc_poset(w)
    dreams = {from_filling(F).with_ambient(len(w)) for F in enumerate_maximal(M, 1)}
    top = from_filling(d_top(M, 1)).with_ambient(len(w))
    bot = from_filling(d_bot(M, 1)).with_ambient(len(w))
    interval = set(P.interval(bot, top))
    ok = w == (1, 2, 6, 4, 5, 3) and interval == dreams and len(dreams) == 10
    return ok, f"w = {w}, |RC(w)| = {len(P)}, interval size {len(interval)}, equal to fillings: {interval == dreams}", []


@criterion(4, "fillings of all moon shapes in a 5x5 box", 180.0)
def _theorem_suite():
    shapes = enumerate_moon_shapes(5, 5)
    failures = []
    cases = fillings_seen = 0
    for M in shapes:
        for k in (1, 2):
            cases += 1
            fillings = enumerate_maximal(M, k)
            fillings_seen += len(fillings)
            dreams = [from_filling(F) for F in fillings]
            problems = []
            if not all(is_reduced(D) for D in dreams):
                problems.append("a")
            if len({permutation_of(D) for D in dreams}) != 1:
                problems.append("b")
            if len({len(D) for D in dreams}) != 1:
                problems.append("c")
            if not interval_check(M, k, fillings).ok:
                problems.append("d")
            tops = [F for F in fillings if next(inverse_chute_successors(F.zero_rows(), M), None) is None]
            bots = [F for F in fillings if next(chute_successors(F.zero_rows(), M), None) is None]
            if tops != [d_top(M, k)] or bots != [d_bot(M, k)]:
                problems.append("e")
            if problems:
                failures.append({"shape": M.to_dict(), "k": k, "failed": problems})
    detail = f"{len(shapes)} shapes, {cases} cases, {fillings_seen} fillings, {len(failures)} failing"
    return not failures, detail, failures[:5]


def _chute_step_ok(D: PipeDream, inverse: bool) -> bool:
    w = permutation_of(D)
    rects = find_inverse_chutable(D) if inverse else find_chutable(D)
    apply = _chute.apply_inverse_chute if inverse else _chute.apply_chute
    for R in rects:
        E = apply(D, R)
        if permutation_of(E.with_ambient(D.n)) != w or not is_reduced(E.with_ambient(D.n)):
            return False
    return True


@criterion(5, "chute moves preserve the permutation on S_4", 30.0)
def _lemma():
    bad = []
    moves = 0
    for w in permutations(4):
        for D in enumerate_rc(w, method="brute"):
            moves += len(find_chutable(D)) + len(find_inverse_chutable(D))
            if not (_chute_step_ok(D, False) and _chute_step_ok(D, True)):
                bad.append(D.label())
    return not bad, f"{moves} moves checked, {len(bad)} failing dreams", bad[:5]


@criterion(6, "extreme pipe dreams on S_5", 300.0)
def _extremes():
    bad = []
    for w in permutations(5):
        dreams = enumerate_rc(w, method="both")
        P = rc_poset(w)
        top, bot = bb_top(w), bb_bot(w)
        ok = (
            top in dreams
            and bot in dreams
            and P.maximal() == [top]
            and P.minimal() == [bot]
        )
        if not ok:
            bad.append(list(w))
    return not bad, f"120 permutations, {len(bad)} failing", bad[:5]


def lattice_table(max_n: int = 5) -> list[dict]:
    rows = []
    for n in range(1, max_n + 1):
        for w in permutations(n):
            verdict = is_lattice(rc_poset(w))
            row = {"w": list(w), "size": len(rc_poset(w)), "lattice": verdict.is_lattice}
            if not verdict:
                row["witness"] = [D.label() for D in verdict.witness]
                row["reason"] = verdict.reason
            rows.append(row)
    return rows


@criterion(7, "lattice verdicts for S_n, n <= 5")
def _lattice():
    table = lattice_table(5)
    findings = [row for row in table if not row["lattice"]]
    return True, f"{len(table)} verdicts, {len(findings)} non-lattices", findings


@criterion(8, "Schubert polynomials from pipe dreams and divided differences")
def _schubert():
    sample = random.Random(20100625).sample(permutations(5), 20)
    perms = permutations(4) + sample
    bad = [list(w) for w in perms if schubert_from_rc(w) != schubert_divided_difference(w)]
    return not bad, f"{len(perms)} permutations, {len(bad)} disagreements", bad


@criterion(9, "k-triangulation counts")
def _counts():
    expected = {(5, 1): 5, (6, 1): 14, (7, 1): 42, (7, 2): 14, (8, 2): 84}
    bad = []
    for (n, k), value in expected.items():
        got = [ktriangulation_count(n, k, m) for m in ("formula", "determinant", "enumerate")]
        if got != [value] * 3:
            bad.append({"n": n, "k": k, "got": got})
    try:
        ktriangulation_count(5, 1, "formula", reading="square")
        square = "integral"
    except NonIntegralProduct as exc:
        square = str(exc.value)
    ok = not bad and square == "25/3"
    return ok, f"{len(expected) - len(bad)}/{len(expected)} points agree, square reading at (5,1) = {square}", bad


RC_42513 = {
    PipeDream.from_crosses([(1, 1), (1, 2), (1, 3), (2, 1), (2, 3), (3, 1)], 5),
    PipeDream.from_crosses([(1, 1), (1, 2), (1, 3), (2, 1), (3, 1), (3, 2)], 5),
}


@criterion(10, "vexillary permutations of moon shapes")
def _vexillary():
    bad = []
    shapes = enumerate_moon_shapes(5, 5)
    for M in shapes:
        for k in (0, 1, 2):
            if not is_vexillary(shape_permutation(M, k)):
                bad.append({"shape": M.to_dict(), "k": k})
    rc = set(enumerate_rc((4, 2, 5, 1, 3), method="both"))
    ok = not bad and rc == RC_42513
    return ok, f"{3 * len(shapes)} cases, {len(bad)} non-vexillary; |RC(4,2,5,1,3)| = {len(rc)}", bad[:5]


@criterion(11, "tableau description for stack shapes", 120.0)
def _ne_se():
    checked = 0
    bad = []
    for S in enumerate_moon_shapes(5, 5):
        if not is_stack(S):
            continue
        for k in (1, 2):
            if any(mu_vector(S)[: k + 1]):
                continue
            checked += 1
            rep = check_ne_se(S, k)
            if not rep.ok:
                bad.append({"shape": S.to_dict(), "k": k, "failures": rep.failures})
    return not bad, f"{checked} stack cases, {len(bad)} failing", bad[:5]


@criterion(12, "the moon-shape counterexample")
def _counterexample():
    rep = check_counterexample()
    ok = (
        rep.P == Tableau(((3, 4, 5), (5,)))
        and rep.Q_top == Tableau(((1, 2, 3), (3,)))
        and rep.Q_bot == Tableau(((2, 3, 4), (4,)))
        and rep.witness_refuted
        and rep.sets_differ
    )
    detail = (
        f"P {rep.P.rows}, Q_top {rep.Q_top.rows}, Q_bot {rep.Q_bot.rows}; "
        f"witness between: {rep.witness_between}, preimage crosses outside the shape: {rep.preimages_outside}; "
        f"|image| = {len(rep.image)}, |between| = {len(rep.between)}"
    )
    return ok, detail, []


@criterion(13, "chute edges are flip edges on S_4")
def _flips():
    bad = []
    for w in permutations(4):
        dreams = enumerate_rc(w)
        if not chute_edges(dreams) <= flip_edges(dreams):
            bad.append(list(w))
    return not bad, f"24 permutations, {len(bad)} failing", bad


@criterion(14, "equal counts for stack shapes with equal column heights")
def _jonsson():
    bad = []
    pairs = 0
    for key, group in stack_classes(enumerate_moon_shapes(4, 4)).items():
        for k in (1, 2):
            for S in group[1:]:
                pairs += 1
                v = jonsson_check(group[0], S, k)
                if not v:
                    bad.append({"heights": list(key), "k": k, "counts": list(v.counts)})
    return not bad, f"{pairs} shape pairs, {len(bad)} unequal", bad[:5]


def run_criterion(number: int) -> CriterionResult:
    title, budget, fn = REGISTRY[number]
    start = time.perf_counter()
    try:
        passed, detail, findings = fn()
    except Exception as exc:  # a crash is a failure of that criterion only
        passed, detail, findings = False, f"raised {type(exc).__name__}: {exc}", []
    seconds = time.perf_counter() - start
    if budget is not None and seconds > budget:
        passed = False
        detail += f"; over budget ({seconds:.1f}s > {budget:g}s)"
    return CriterionResult(number, title, passed, detail, seconds, budget, findings)


def run_all(numbers=None) -> list[CriterionResult]:
    return [run_criterion(n) for n in sorted(numbers or REGISTRY)]
