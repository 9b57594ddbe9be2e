"""Command-line interface: check, elim, prove, corpus and render."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .calculus import Calc
from .corpus import build_corpus
from .cutelim import PreconditionViolated, eliminate_cuts
from .kernel import check_proof
from .render import FORMATS, render
from .script import (
    ParseError, parse_script, parse_sequent, parse_signature, print_script, script_for,
)
from .search import Exhausted, SearchBudget, prove

DEFAULT_SIG = "(pred P 1) (pred Q 1) (pred R 2)"


class _Fail(Exception):
    def __init__(self, message: str, code: int = 1):
        super().__init__(message)
        self.code = code


def _load(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _Fail(f"{path}: {exc.strerror}") from None
    try:
        return parse_script(text)
    except ParseError as exc:
        raise _Fail(f"{path}:{exc.line}:{exc.col}: {type(exc).__name__}: {exc.message}") from None


def _calc(script, override: str | None) -> Calc:
    if override:
        return Calc(override)
    if script.calculus is None:
        raise _Fail("no calculus given: add (calculus C) to the script or pass --calculus")
    return script.calculus


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# -- subcommands ------------------------------------------------------------------

def cmd_check(args) -> int:
    script = _load(args.file)
    calc = _calc(script, args.calculus)
    if not script.proofs:
        raise _Fail(f"{args.file}: no proof to check")
    reports = {}
    for name, proof in script.proofs.items():
        report = check_proof(proof, calc)
        claimed = script.sequents.get(name)
        reports[name] = (report, claimed is None or claimed == proof.conclusion)
    ok = all(r.valid and match for r, match in reports.values())
    if args.json:
        payload = {name: {**r.to_json(), "calculus": calc.value, "matches_sequent": match}
                   for name, (r, match) in reports.items()}
        print(json.dumps(payload, indent=2))
    else:
        for name, (r, match) in reports.items():
            print(f"proof {name} ({calc.value})")
            print("  " + str(r).replace("\n", "\n  "))
            if not match:
                print(f"  conclusion differs from declared sequent {name}")
    return 0 if ok else 1


def cmd_elim(args) -> int:
    script = _load(args.file)
    calc = _calc(script, args.calculus)
    name, proof = script.main_proof()
    before = check_proof(proof, calc)
    if not before.valid:
        print(str(before), file=sys.stderr)
        raise _Fail(f"{args.file}: input proof {name} is not valid in {calc.value}")
    try:
        out, trace = eliminate_cuts(proof, calc)
    except PreconditionViolated as exc:
        raise _Fail(f"{args.file}: cut elimination stopped: {type(exc).__name__}: {exc}") from None
    if out.conclusion != proof.conclusion:
        raise _Fail(f"end sequent changed: {proof.conclusion} became {out.conclusion}", 2)
    report = check_proof(out, calc)
    text = print_script(script_for(name, out, calc, script.signature))
    if args.trace:
        Path(args.trace).write_text(json.dumps(trace.to_json(), indent=2), encoding="utf-8")
    if args.json:
        payload = {**report.to_json(), "calculus": calc.value, "input_cuts": before.cut_count}
        if args.output:
            Path(args.output).write_text(text, encoding="utf-8")
        else:
            payload["script"] = text
        print(json.dumps(payload, indent=2))
    else:
        _emit(text, args.output)
    return 0 if report.valid and report.cut_count == 0 else 1


def cmd_prove(args) -> int:
    try:
        sig = parse_signature(args.signature)
        goal = parse_sequent(args.sequent, sig)
    except ParseError as exc:
        raise _Fail(f"{exc.line}:{exc.col}: {type(exc).__name__}: {exc.message}") from None
    budget = SearchBudget(args.depth, args.contractions, args.witnesses)
    calc = Calc(args.calculus)
    result = prove(goal, calc, budget)
    if isinstance(result, Exhausted):
        hint = f"; open branch {result.branch}" if result.branch else ""
        print(f"exhausted: frontier {result.frontier}{hint}")
        return 1
    _emit(print_script(script_for("goal", result, calc, sig)), args.output)
    return 0


def cmd_corpus(args) -> int:
    outdir = Path(args.emit)
    outdir.mkdir(parents=True, exist_ok=True)
    for e in build_corpus():
        text = f"; {e.source}\n" + print_script(script_for(e.id, e.proof, e.calc))
        (outdir / f"{e.id}.proof").write_text(text, encoding="utf-8")
        print(outdir / f"{e.id}.proof")
    return 0


def cmd_render(args) -> int:
    script = _load(args.file)
    _, proof = script.main_proof()
    _emit(render(proof, args.format) + "\n", args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    calcs = [c.value for c in Calc]
    ap = argparse.ArgumentParser(prog="defdesc",
                                 description="Proof checking, cut elimination and search for "
                                             "free logics with definite descriptions.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate every proof in a script")
    p.add_argument("file")
    p.add_argument("--calculus", choices=calcs)
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("elim", help="eliminate cuts from the last proof in a script")
    p.add_argument("file")
    p.add_argument("--calculus", choices=calcs)
    p.add_argument("--trace", metavar="OUT", help="write the reduction trace as JSON")
    p.add_argument("-o", "--output", help="write the cut-free script here instead of stdout")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.set_defaults(run=cmd_elim)

    p = sub.add_parser("prove", help="bounded backward proof search")
    p.add_argument("sequent", help='e.g. "(seq ((P a0)) ((P a0)))"')
    p.add_argument("--calculus", choices=calcs, required=True)
    p.add_argument("--depth", type=int, default=20)
    p.add_argument("--contractions", type=int, default=3)
    p.add_argument("--witnesses", type=int, default=1)
    p.add_argument("--signature", default=DEFAULT_SIG,
                   help=f"declarations, default {DEFAULT_SIG!r}")
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_prove)

    p = sub.add_parser("corpus", help="write the built-in corpus as proof scripts")
    p.add_argument("--emit", metavar="DIR", required=True)
    p.set_defaults(run=cmd_corpus)

    p = sub.add_parser("render", help="print the last proof of a script")
    p.add_argument("file")
    p.add_argument("--format", choices=FORMATS, default="plain")
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_render)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except _Fail as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
