"""The acceptance criteria, one test each.

Every test records a PASS/FAIL line; the lines are printed at the end of the
pytest run (see conftest.py) and also when this file is run as a script.
"""
from __future__ import annotations

import sys
import time
from dataclasses import dataclass, field

import pytest

from defdesc.calculus import Calc, Sequent, StepError, check_step
from defdesc.corpus import EX, F, G, build_corpus, close_hypotheses, desc, russell, si1_from
from defdesc.cutelim import DegreeViolation, eliminate_cuts, rename_parameter
from defdesc.golden import golden_suite
from defdesc.kernel import check_proof, height, proof_params
from defdesc.randproof import CALC, Limits, max_formula_degree, random_proofs
from defdesc.search import SearchBudget, prove
from defdesc.syntax import fresh_parameter, params, replace_term

from mutants import mutants

RESULTS: dict[int, str] = {}


def record(n: int, ok: bool, detail: str) -> None:
    RESULTS[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(RESULTS[n])
    assert ok, RESULTS[n]


@dataclass
class ElimRun:
    name: str
    ok: bool
    seconds: float
    aux_cuts: int
    degree_failures: int
    measures_decrease: bool
    note: str = ""


@dataclass
class ElimStats:
    runs: list[ElimRun] = field(default_factory=list)


def _eliminate(name, p, calc) -> ElimRun:
    t0 = time.perf_counter()
    try:
        q, trace = eliminate_cuts(p, calc)
    except DegreeViolation as exc:
        return ElimRun(name, False, time.perf_counter() - t0, 0, 1, False, str(exc))
    dt = time.perf_counter() - t0
    r = check_proof(q, calc)
    ms = trace.measures
    dec = all(x > y for x, y in zip(ms, ms[1:]))
    ok = r.valid and r.cut_count == 0 and q.conclusion == p.conclusion and dec
    return ElimRun(name, ok, dt, trace.aux_cuts, 0, dec)


@pytest.fixture(scope="module")
def golden_runs() -> ElimStats:
    return ElimStats([_eliminate(g.name, g.proof, g.calc) for g in golden_suite()])


@pytest.fixture(scope="module")
def random_runs() -> tuple[ElimStats, float, list]:
    t0 = time.perf_counter()
    proofs = random_proofs(2024, 200)
    stats = ElimStats([_eliminate(f"random-{i}", p, CALC) for i, p in enumerate(proofs)])
    return stats, time.perf_counter() - t0, proofs


def test_criterion_1_corpus_validity():
    t0 = time.perf_counter()
    corpus = build_corpus()
    bad = [e.id for e in corpus if not check_proof(e.proof, e.calc).valid]
    dt = time.perf_counter() - t0
    record(1, not bad and len(corpus) == 14 and dt < 5,
           f"{len(corpus) - len(bad)}/{len(corpus)} entries valid in {dt:.2f}s (limit 5s)")


def test_criterion_2_template_closure():
    corpus = {e.id: e for e in build_corpus()}
    si2e = Sequent([desc(F, EX), desc(F, EX)], [russell(F, EX)])
    lemmas = [si1_from(), si1_from(EX), corpus["thm1-d"].proof, prove(si2e, Calc.GPFL_EQ_I)]
    known = {p.conclusion: p for p in lemmas}
    need = {"thm1-ai": "a.i", "thm1-aii": "a.ii", "thm1-b": "b", "thm1-c": "c",
            "thm1-c-li3": "c", "thm1-d": "d"}
    failed = []
    for ident in need:
        e = corpus[ident]
        closures = [close_hypotheses(e.proof), close_hypotheses(e.proof, known=known)] \
            if e.hypotheses else [e.proof]
        for q in closures:
            r = check_proof(q, e.calc)
            if not (r.valid and r.closed):
                failed.append(ident)
    parts = sorted(set(need.values()))
    record(2, not failed, f"closed and valid: {', '.join(parts)}"
           + (f"; failed {failed}" if failed else ""))


def test_criterion_3_golden(golden_runs):
    runs = golden_runs.runs
    slow = [r.name for r in runs if r.seconds >= 1]
    bad = [r.name for r in runs if not r.ok]
    worst = max(r.seconds for r in runs)
    record(3, len(runs) >= 10 and not slow and not bad,
           f"{len(runs) - len(bad)}/{len(runs)} golden proofs cut-free and valid, "
           f"slowest {worst:.3f}s (limit 1s each)")


def test_criterion_4_random(random_runs):
    stats, total, proofs = random_runs
    lim = Limits()
    shaped = all(max_formula_degree(p) <= lim.max_degree and height(p) <= lim.max_height
                 and 1 <= check_proof(p, CALC).cut_count <= lim.max_cuts for p in proofs)
    bad = [r.name for r in stats.runs if not r.ok]
    record(4, shaped and not bad and len(stats.runs) == 200 and total < 60,
           f"{200 - len(bad)}/200 random proofs reduced, measure strictly decreasing, "
           f"{total:.1f}s (limit 60s)")


def _rename_checks(p, calc):
    """Rename each end-sequent parameter to a fresh one and to another parameter."""
    fails = 0
    ps = sorted(proof_params(p), key=lambda q: q.name)
    targets = [fresh_parameter(ps)]
    for a in sorted({x for f in p.conclusion for x in params(f)}, key=lambda q: q.name):
        for t in targets + [q for q in ps if q != a][:1]:
            q = rename_parameter(p, a, t)
            r = check_proof(q, calc)
            want = Sequent([replace_term(f, a, t) for f in p.conclusion.ant],
                           [replace_term(f, a, t) for f in p.conclusion.suc])
            if not (r.valid and r.height == height(p) and q.conclusion == want):
                fails += 1
    return fails


def test_criterion_5_substitution(random_runs):
    _, _, proofs = random_runs
    subjects = [(e.proof, e.calc) for e in build_corpus()] + [(p, CALC) for p in proofs[:100]]
    fails = sum(_rename_checks(p, c) for p, c in subjects)
    record(5, fails == 0, f"{len(subjects)} proofs renamed, {fails} failures")


def test_criterion_6_side_conditions():
    ms = mutants()
    ok = 0
    for m in ms:
        try:
            check_step(m.conclusion, m.rule, m.premises, m.calc)
        except StepError as exc:
            ok += type(exc) is m.error
    record(6, len(ms) >= 12 and ok == len(ms),
           f"{ok}/{len(ms)} mutants rejected with the expected error")


def test_criterion_7_search():
    corpus = {e.id: e for e in build_corpus()}
    goals = [
        ("SI1", si1_from().conclusion, Calc.GPFL_EQ_I, 20),
        ("SI2", Sequent([desc(F, G), desc(F, EX)], [russell(F, G)]), Calc.GPFL_EQ_I, 20),
        ("Russell/GNFL", corpus["neg-russell-equiv"].end_sequent, Calc.GNFL_EQ_I, 24),
        ("Russell/GC", corpus["classical-russell-equiv"].end_sequent, Calc.GC_EQ_I, 24),
    ]
    times, bad = [], []
    for name, goal, calc, depth in goals:
        t0 = time.perf_counter()
        p = prove(goal, calc, SearchBudget(max_depth=depth))
        dt = time.perf_counter() - t0
        times.append(f"{name} {dt:.2f}s")
        if not (hasattr(p, "conclusion") and p.conclusion == goal
                and check_proof(p, calc).valid and dt < 10):
            bad.append(name)
    record(7, not bad, "; ".join(times) + " (limit 10s each)"
           + (f"; failed {bad}" if bad else ""))


def test_criterion_8_degree_discipline(golden_runs, random_runs):
    runs = golden_runs.runs + random_runs[0].runs
    aux = sum(r.aux_cuts for r in runs)
    failures = sum(r.degree_failures for r in runs)
    record(8, failures == 0 and aux > 0,
           f"{aux} auxiliary cuts checked across {len(runs)} runs, {failures} degree violations")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
