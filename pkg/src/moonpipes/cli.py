"""Command line interface: ``moonpipes <command> ...``.

Exit codes: 0 success, 1 failed verification, 2 usage or input error,
3 finding (a non-lattice or an oracle disagreement).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import acceptance
from .chute import NotClosed, OracleDisagreement, chute_poset, is_lattice, rc_poset, interval_check
from .eg import HypothesisViolated, NotAStack, check_ne_se, eg_of_filling, mu_vector
from .filling import NonUniqueFixpoint, d_bot, d_top, enumerate_maximal
from .pipedream import (
    bb_bot,
    bb_top,
    check_permutation,
    coxeter_length,
    from_filling,
    permutations,
    shape_permutation,
)
from .schubert import NonIntegralProduct, ktriangulation_count, schubert_divided_difference, schubert_from_rc
from .shape import MoonShape, ShapeError, parse_shape, reverse_staircase, staircase

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_FINDING = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class CommandOutcome:
    status: str  # ok | failure | finding | error
    payload: dict = field(default_factory=dict)
    human_summary: str = ""

    @property
    def exit_code(self) -> int:
        return {"ok": EXIT_OK, "failure": EXIT_FAIL, "finding": EXIT_FINDING}.get(self.status, EXIT_USAGE)


# -- input helpers ----------------------------------------------------------

def _perm(text: str) -> tuple[int, ...]:
    try:
        w = tuple(int(x) for x in text.replace(" ", "").split(","))
        return check_permutation(w)
    except ValueError as exc:
        raise UsageError(f"bad permutation {text!r}: {exc}") from exc


def _rows(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad row vector {text!r}") from exc


def _read_shape(args) -> MoonShape:
    if getattr(args, "staircase", None):
        return staircase(args.staircase)
    if getattr(args, "reverse_staircase", None):
        return reverse_staircase(args.reverse_staircase)
    if not getattr(args, "shape", None):
        raise UsageError("give --shape FILE, --staircase N or --reverse-staircase N")
    try:
        text = sys.stdin.read() if args.shape == "-" else Path(args.shape).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.shape}: {exc}") from exc
    try:
        return parse_shape(text)
    except ShapeError as exc:
        raise UsageError(f"{args.shape}: {exc}") from exc


def _add_shape_args(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--shape", help="grid file with '#' for cells and '.' for gaps ('-' reads stdin)")
    g.add_argument("--staircase", type=int, metavar="N")
    g.add_argument("--reverse-staircase", type=int, metavar="N")


# -- commands -----------------------------------------------------------------

def cmd_enumerate(args) -> CommandOutcome:
    M = _read_shape(args)
    if args.k < 0:
        raise UsageError("k must be non-negative")
    fillings = enumerate_maximal(M, args.k, _rows(args.rows), method=args.method)
    noun = "filling" if len(fillings) == 1 else "fillings"
    lines = [f"{len(fillings)} {noun}"]
    if args.show:
        for F in fillings:
            lines += ["", F.render()]
    payload = {"shape": M.to_dict(), "k": args.k, "count": len(fillings)}
    if args.show:
        payload["fillings"] = [F.to_dict() for F in fillings]
    return CommandOutcome("ok", payload, "\n".join(lines))


def cmd_poset(args) -> CommandOutcome:
    if args.perm:
        w = _perm(args.perm)
        if coxeter_length(w) > args.max_length:
            raise UsageError(f"length {coxeter_length(w)} exceeds --max-length {args.max_length}")
        P = rc_poset(w)
        top, bot = bb_top(w), bb_bot(w)
        ok = P.maximal() == [top] and P.minimal() == [bot]
        payload = {
            "permutation": list(w),
            "nodes": len(P),
            "edges": len(P.covers),
            "maximum": [D.label() for D in P.maximal()],
            "minimum": [D.label() for D in P.minimal()],
            "extremes_are_bb": ok,
        }
        summary = (
            f"{len(P)} nodes; maximum {payload['maximum']}, minimum {payload['minimum']}; "
            f"extremes match bb_top/bb_bot: {ok}"
        )
        highlight = ()
    else:
        M = _read_shape(args)
        if args.k is None:
            raise UsageError("--k is required with a shape")
        fillings = enumerate_maximal(M, args.k)
        w = shape_permutation(M, args.k)
        if coxeter_length(w) > args.max_length:
            raise UsageError(f"length {coxeter_length(w)} exceeds --max-length {args.max_length}")
        Q = chute_poset([from_filling(F) for F in fillings], within=M)
        top, bot = from_filling(d_top(M, args.k)), from_filling(d_bot(M, args.k))
        report = interval_check(M, args.k, fillings)
        ok = Q.maximal() == [top] and Q.minimal() == [bot] and report.ok
        P = rc_poset(w)
        highlight = [D.with_ambient(len(w)) for D in Q.elements]
        payload = {
            "permutation": list(w),
            "nodes": len(P),
            "fillings": len(fillings),
            "maximum_is_d_top": Q.maximal() == [top],
            "minimum_is_d_bot": Q.minimal() == [bot],
            "interval": report.ok,
        }
        summary = (
            f"w = {','.join(map(str, w))}; RC(w) has {len(P)} nodes, {len(fillings)} fillings; "
            f"max = d_top: {payload['maximum_is_d_top']}, min = d_bot: {payload['minimum_is_d_bot']}, "
            f"interval: {report.ok}"
        )
    if args.dot:
        Path(args.dot).write_text(P.to_dot(highlight=highlight))
        summary += f"\nwrote {args.dot}"
    return CommandOutcome("ok" if ok else "finding", payload, summary)


def cmd_lattice_check(args) -> CommandOutcome:
    if args.perm:
        perms = [_perm(args.perm)]
    elif args.all_sn is not None:
        if args.all_sn > args.max_sn:
            raise UsageError(f"--all-sn {args.all_sn} exceeds --max-sn {args.max_sn}")
        perms = [w for n in range(1, args.all_sn + 1) for w in permutations(n)]
    else:
        raise UsageError("give --perm w or --all-sn N")
    rows, lines = [], []
    for w in perms:
        v = is_lattice(rc_poset(w))
        row = {"w": list(w), "lattice": v.is_lattice}
        if not v:
            row["witness"] = [D.label() for D in v.witness]
            row["reason"] = v.reason
        rows.append(row)
        lines.append(f"{','.join(map(str, w))}: {'lattice' if v else 'NOT a lattice (' + v.reason + ')'}")
    bad = [r for r in rows if not r["lattice"]]
    lines.append(f"{len(rows)} verdicts, {len(bad)} non-lattices")
    return CommandOutcome("finding" if bad else "ok", {"verdicts": rows}, "\n".join(lines))


def cmd_verify(args) -> CommandOutcome:
    only = None
    if args.only:
        only = [int(x) for x in args.only.split(",")]
        unknown = set(only) - set(acceptance.REGISTRY)
        if unknown:
            raise UsageError(f"unknown criteria {sorted(unknown)}")
    results = acceptance.run_all(only)
    failed = [r for r in results if not r.passed]
    findings = [r for r in results if r.findings and r.passed]
    status = "failure" if failed else ("finding" if any(r.number == 7 for r in findings) else "ok")
    lines = [r.line() for r in results]
    lines.append(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return CommandOutcome(status, {"criteria": [r.to_dict() for r in results]}, "\n".join(lines))


def cmd_schubert(args) -> CommandOutcome:
    w = _perm(args.perm)
    if coxeter_length(w) > args.max_length:
        raise UsageError(f"length {coxeter_length(w)} exceeds --max-length {args.max_length}")
    poly = schubert_from_rc(w, max_length=args.max_length)
    payload = {"permutation": list(w), "polynomial": poly.to_dict(), "text": str(poly)}
    lines = [str(poly)]
    status = "ok"
    if args.oracle:
        other = schubert_divided_difference(w)
        agree = other == poly
        payload["oracle_agrees"] = agree
        lines.append(f"divided differences agree: {agree}")
        if not agree:
            status = "finding"
            payload["oracle"] = other.to_dict()
    return CommandOutcome(status, payload, "\n".join(lines))


def cmd_eg(args) -> CommandOutcome:
    M = _read_shape(args)
    fillings = enumerate_maximal(M, args.k)
    pairs = [eg_of_filling(F) for F in fillings]
    payload = {"shape": M.to_dict(), "k": args.k, "fillings": len(fillings)}
    lines = [f"{len(fillings)} fillings"]
    Ps = {P for P, _ in pairs}
    if len(Ps) == 1:
        P = next(iter(Ps))
        payload["P"] = P.to_dict()
        lines += ["P:", P.render()]
    else:
        payload["P"] = [P.to_dict() for P in sorted(Ps, key=lambda T: T.rows)]
        lines.append(f"{len(Ps)} different P tableaux")
    payload["Q"] = [Q.to_dict() for _, Q in pairs]
    try:
        mu_vector(M)
        rep = check_ne_se(M, args.k, fillings)
        payload["check"] = rep.to_dict()
        lines.append(f"tableau description: {'all checks pass' if rep.ok else '; '.join(rep.failures)}")
        status = "ok" if rep.ok else "finding"
    except (NotAStack, HypothesisViolated) as exc:
        payload["check"] = None
        lines.append(f"tableau description not applicable: {exc}")
        status = "ok"
    return CommandOutcome(status, payload, "\n".join(lines))


def cmd_count(args) -> CommandOutcome:
    try:
        value = ktriangulation_count(args.n, args.k, args.method, reading=args.reading)
    except NonIntegralProduct as exc:
        return CommandOutcome(
            "finding",
            {"n": args.n, "k": args.k, "method": args.method, "value": str(exc.value), "integral": False},
            str(exc),
        )
    payload = {"n": args.n, "k": args.k, "method": args.method, "value": value}
    return CommandOutcome("ok", payload, str(value))


# -- entry point --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="moonpipes", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="print a JSON document instead of text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="maximal fillings of a shape")
    _add_shape_args(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--rows", help="zeros per row, e.g. 1,2,0")
    p.add_argument("--method", choices=["backtrack", "chute", "both"], default="backtrack")
    p.add_argument("--show", action="store_true", help="print every filling")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("poset", help="chute poset of a permutation or a shape")
    _add_shape_args(p)
    p.add_argument("--perm")
    p.add_argument("--k", type=int)
    p.add_argument("--dot", help="write the Hasse diagram to this file")
    p.add_argument("--max-length", type=int, default=16)
    p.set_defaults(func=cmd_poset)

    p = sub.add_parser("lattice-check", help="is the chute poset a lattice")
    p.add_argument("--perm")
    p.add_argument("--all-sn", type=int, metavar="N")
    p.add_argument("--max-sn", type=int, default=5)
    p.set_defaults(func=cmd_lattice_check)

    p = sub.add_parser("verify", help="run the reproduction checks")
    p.add_argument("--only", help="comma separated criterion numbers")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("schubert", help="Schubert polynomial of a permutation")
    p.add_argument("--perm", required=True)
    p.add_argument("--oracle", action="store_true", help="compare with divided differences")
    p.add_argument("--max-length", type=int, default=16)
    p.set_defaults(func=cmd_schubert)

    p = sub.add_parser("eg", help="Edelman-Greene tableaux of the fillings of a shape")
    _add_shape_args(p)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_eg)

    p = sub.add_parser("count", help="number of k-triangulations of the n-gon")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", choices=["formula", "determinant", "enumerate"], default="formula")
    p.add_argument("--reading", choices=["triangular", "square"], default="triangular")
    p.set_defaults(func=cmd_count)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        outcome = args.func(args)
    except (UsageError, ShapeError, ValueError, NotClosed) as exc:
        outcome = CommandOutcome("error", {"error": str(exc)}, f"error: {exc}")
    except (OracleDisagreement, NonUniqueFixpoint) as exc:
        outcome = CommandOutcome("finding", {"finding": str(exc)}, f"finding: {exc}")
    if args.json:
        doc = {"command": args.command, "status": outcome.status, **outcome.payload}
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        stream = sys.stderr if outcome.status == "error" else sys.stdout
        print(outcome.human_summary, file=stream)
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
