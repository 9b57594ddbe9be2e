"""Bounded backward proof search, used as an independent oracle.

The search works on set-based sequents in which every principal formula is
kept in the premises, so each rule application is invertible and contraction
is implicit.  Rules that need no witness are applied eagerly, in a fixed order
and without backtracking.  Backtracking happens only over witnessed
applications (quantifier instances, description rules, identity rewrites),
and ``max_depth`` bounds how many of those a branch may stack.  Iterative
deepening over that depth keeps results deterministic and budget-monotone.

A found proof is translated into G1 by weakening premises up to the kept
context and contracting the duplicated principals, then kernel-checked.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

from .calculus import ADMITTED, Calc, Rule, RuleInstance, Sequent, StepError, shape
from .kernel import ProofNode, adjust, ax, check_proof, infer
from .syntax import (
    And, Desc, E, Eq, Exists, Forall, Formula, Func, Imp, Not, Or, Param, Pred, Template,
    Term, Var, closed_subterms, fresh_parameter, is_atomic, params, show,
)

R = Rule


@dataclass(frozen=True)
class SearchBudget:
    max_depth: int = 20
    max_contractions_per_formula: int = 3
    max_witness_terms: int = 1

    def __post_init__(self):
        for name in ("max_depth", "max_contractions_per_formula", "max_witness_terms"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")


@dataclass
class Branch:
    """Atoms of one open branch, signed by side."""
    left: tuple[Formula, ...]
    right: tuple[Formula, ...]
    saturated: bool

    def __str__(self):
        signed = [f"{show(f)} left" for f in self.left] + [f"{show(f)} right" for f in self.right]
        return "{" + ", ".join(signed) + "}"

    def to_json(self) -> dict:
        return {"left": [show(f) for f in self.left], "right": [show(f) for f in self.right],
                "saturated": self.saturated}


@dataclass
class Exhausted:
    """No proof within the budget.  Not a claim of unprovability."""
    frontier: int
    branch: Branch | None = None

    def to_json(self) -> dict:
        return {"frontier": self.frontier,
                "branch": self.branch.to_json() if self.branch else None}


# -- search states --------------------------------------------------------------

@dataclass(frozen=True)
class _State:
    ant: tuple[Formula, ...]
    suc: tuple[Formula, ...]
    done: frozenset = frozenset()
    uses: tuple = ()          # sorted (formula-key, count) pairs

    def key(self):
        return frozenset(self.ant), frozenset(self.suc), self.done, self.uses

    def used(self, f: Formula) -> int:
        return dict(self.uses).get(f, 0)

    def sequent(self) -> Sequent:
        return Sequent(self.ant, self.suc)


@dataclass
class _Found:
    state: _State
    rule: RuleInstance
    children: list["_Found"] = field(default_factory=list)


def _add(seq: tuple, extra) -> tuple:
    out = list(seq)
    for f in extra:
        if f not in out:
            out.append(f)
    return tuple(out)


def _templates(B: Formula, t: Term) -> Iterator[Template]:
    """Templates ``A`` with ``A(t) == B``: holes at nonempty subsets of top-level occurrences."""
    if isinstance(B, Pred):
        args = B.args
        build = lambda xs: Pred(B.symbol, tuple(xs))
    elif isinstance(B, Eq):
        args = (B.left, B.right)
        build = lambda xs: Eq(*xs)
    elif isinstance(B, E):
        args = (B.arg,)
        build = lambda xs: E(xs[0])
    else:
        return
    spots = [i for i, s in enumerate(args) if s == t]
    for n in range(len(spots), 0, -1):
        for chosen in itertools.combinations(spots, n):
            yield Template(build([Var(0) if i in chosen else s for i, s in enumerate(args)]))


def _top_terms(B: Formula) -> list[Term]:
    if isinstance(B, Pred):
        return list(dict.fromkeys(B.args))
    if isinstance(B, Eq):
        return list(dict.fromkeys((B.left, B.right)))
    if isinstance(B, E):
        return [B.arg]
    return []


class _Search:
    def __init__(self, goal: Sequent, calc: Calc, budget: SearchBudget):
        self.calc = calc
        self.rules = ADMITTED[calc]
        self.budget = budget
        taken = set(params(goal))
        self.pool: list[Param] = []
        for _ in range(budget.max_witness_terms):
            p = fresh_parameter(taken)
            taken.add(p)
            self.pool.append(p)
        self.failed: dict = {}
        self.frontier = 0
        self.open_leaf: Branch | None = None

    # -- helpers ---------------------------------------------------------------

    def _fresh(self, st: _State, n: int) -> tuple[Param, ...]:
        avoid = set(params(st.ant)) | set(params(st.suc)) | set(self.pool)
        out = []
        for _ in range(n):
            p = fresh_parameter(avoid)
            avoid.add(p)
            out.append(p)
        return tuple(out)

    def _universe(self, st: _State) -> list[Term]:
        seen: dict[Term, None] = {}
        for f in st.ant + st.suc:
            for t in closed_subterms(f):
                seen.setdefault(t)
        for p in self.pool:
            seen.setdefault(p)
        return list(seen)

    def _existing(self, st: _State) -> list[Term]:
        return [f.arg for f in st.ant if isinstance(f, E)]

    def _premises(self, st: _State, ri: RuleInstance):
        sh = shape(ri)
        return [(_add(st.ant, a), _add(st.suc, s)) for a, s in sh.premises]

    def _progress(self, st: _State, ri: RuleInstance) -> bool:
        """Every premise adds something; otherwise the step is circular."""
        try:
            prems = self._premises(st, ri)
        except StepError:
            return False
        return all(len(a) > len(st.ant) or len(s) > len(st.suc) for a, s in prems)

    @staticmethod
    def _closed(ant, suc) -> bool:
        return any(f in suc for f in ant)

    # -- rule enumeration ------------------------------------------------------

    def _eager(self, st: _State) -> Iterator[RuleInstance]:
        rules = self.rules
        for f in st.suc:
            if isinstance(f, Eq) and f.left == f.right:
                if R.EqE in rules:
                    yield RuleInstance(R.EqE, terms=(f.left,))
                if R.NEI in rules and E(f.left) in st.ant:
                    yield RuleInstance(R.NEI, E(f.left))
        for f in st.ant:
            if isinstance(f, Not):
                yield RuleInstance(R.LNeg, f)
            elif isinstance(f, And):
                yield RuleInstance(R.LAnd, f)
            elif isinstance(f, Or):
                yield RuleInstance(R.LOr, f)
            elif isinstance(f, Imp):
                yield RuleInstance(R.LImp, f)
        for f in st.suc:
            if isinstance(f, Not):
                yield RuleInstance(R.RNeg, f)
            elif isinstance(f, And):
                yield RuleInstance(R.RAnd, f)
            elif isinstance(f, Or):
                yield RuleInstance(R.ROr, f)
            elif isinstance(f, Imp):
                yield RuleInstance(R.RImp, f)
        if R.NEE in rules:
            for f in st.ant:
                if isinstance(f, Pred):
                    for t in dict.fromkeys(f.args):
                        yield RuleInstance(R.NEE, f, terms=(t,))
                elif isinstance(f, E) and isinstance(f.arg, Func):
                    for t in dict.fromkeys(f.arg.args):
                        yield RuleInstance(R.NEEf, f, terms=(t,))
        # eigenvariable rules, once per formula
        for f in st.suc:
            if isinstance(f, Forall):
                for tag in (R.RAll, R.RAllC):
                    if tag in rules and (tag, f) not in st.done:
                        yield RuleInstance(tag, f, eigen=self._fresh(st, 1))
        for f in st.ant:
            if isinstance(f, Exists):
                for tag in (R.LEx, R.LExC):
                    if tag in rules and (tag, f) not in st.done:
                        yield RuleInstance(tag, f, eigen=self._fresh(st, 1))
            elif isinstance(f, Desc):
                for tag in (R.LI3, R.LI5, R.LI5S, R.LIN1, R.LIC1):
                    if tag in rules and (tag, f) not in st.done:
                        yield RuleInstance(tag, f, eigen=self._fresh(st, 1))

    def _choices(self, st: _State) -> Iterator[RuleInstance]:
        rules = self.rules
        cap = self.budget.max_contractions_per_formula
        live = lambda f: st.used(f) < cap
        exist = self._existing(st)
        uni = self._universe(st)
        for f in st.ant:
            if isinstance(f, Forall) and live(f):
                if R.LAll in rules:
                    for t in exist:
                        yield RuleInstance(R.LAll, f, terms=(t,))
                if R.LAllC in rules:
                    for t in uni:
                        yield RuleInstance(R.LAllC, f, terms=(t,))
        for f in st.suc:
            if isinstance(f, Exists) and live(f):
                if R.REx in rules:
                    for t in exist:
                        yield RuleInstance(R.REx, f, terms=(t,))
                if R.RExC in rules:
                    for t in uni:
                        yield RuleInstance(R.RExC, f, terms=(t,))
            if isinstance(f, Desc) and live(f):
                for tag in (R.RI, R.RIS, R.RIN, R.RIC):
                    if tag in rules:
                        terms = exist if tag == R.RIS else uni
                        for t in terms:
                            yield RuleInstance(tag, f, terms=(t,), eigen=self._fresh(st, 1))
        atoms_right = [B for B in st.suc if is_atomic(B)]
        for f in st.ant:
            if not (isinstance(f, Desc) and live(f)):
                continue
            for tag in (R.LI1, R.LI1S):
                if tag in rules:
                    terms = exist if tag == R.LI1S else uni
                    for t in terms:
                        yield RuleInstance(tag, f, terms=(t,), eigen=self._fresh(st, 2))
            scope = f.scope
            eq_scope = isinstance(scope, Eq) and scope.left == Var(0)
            for tag in (R.LI2, R.LIN2, R.LIC2, R.LI4):
                if tag not in rules:
                    continue
                if tag == R.LI2 and scope != E(Var(0)):
                    continue
                if tag == R.LI4 and not eq_scope:
                    continue
                for B in atoms_right:
                    for t1 in _top_terms(B):
                        for A in _templates(B, t1):
                            if tag == R.LI4:
                                yield RuleInstance(tag, f, terms=(t1,), template=A)
                                continue
                            for t2 in uni:
                                if t2 != t1:
                                    yield RuleInstance(tag, f, terms=(t1, t2), template=A)
            if R.LI2SI in rules and scope == E(Var(0)):
                for t1, t2 in itertools.permutations(exist, 2):
                    yield RuleInstance(R.LI2SI, f, terms=(t1, t2))
            if R.LI4SI in rules and eq_scope and E(scope.right) in st.ant:
                for t1 in exist:
                    yield RuleInstance(R.LI4SI, f, terms=(t1,))
        if R.EqI in rules:
            for f in st.ant:
                if not (isinstance(f, Eq) and f.left != f.right and live(f)):
                    continue
                for B in st.ant:
                    if is_atomic(B) and B != f:
                        for A in _templates(B, f.left):
                            yield RuleInstance(R.EqI, f, terms=(f.left, f.right), template=A)
        # reflexive identities make symmetric rewrites available
        eq_terms = list(dict.fromkeys(t for f in st.ant if isinstance(f, Eq)
                                      for t in (f.left, f.right)))
        for t in eq_terms:
            if R.EqE in rules:
                yield RuleInstance(R.EqE, terms=(t,))
            if R.NEI in rules and E(t) in st.ant:
                yield RuleInstance(R.NEI, E(t))

    # -- core --------------------------------------------------------------------

    def _step(self, st: _State, ri: RuleInstance, counted: bool) -> list[_State]:
        done = st.done
        if ri.eigen and not counted:
            done = done | {(ri.tag, ri.main)}
        uses = st.uses
        if counted and ri.main is not None:
            u = dict(st.uses)
            u[ri.main] = u.get(ri.main, 0) + 1
            uses = tuple(sorted(u.items(), key=lambda kv: repr(kv[0])))
        return [_State(a, s, done, uses) for a, s in self._premises(st, ri)]

    def _rank(self, st: _State, ri: RuleInstance) -> int:
        # premises that an axiom closes at once go first
        return sum(not self._closed(a, s) for a, s in self._premises(st, ri))

    def prove(self, st: _State, depth: int) -> _Found | None:
        for A in st.ant:
            if A in st.suc:
                return _Found(st, RuleInstance(R.Ax, A))
        key = st.key()
        if self.failed.get(key, -1) >= depth:
            return None
        for ri in self._eager(st):
            if self._progress(st, ri):
                kids = []
                for child in self._step(st, ri, counted=False):
                    got = self.prove(child, depth)
                    if got is None:
                        self.failed[key] = depth
                        return None
                    kids.append(got)
                return _Found(st, ri, kids)
        if depth == 0:
            self.frontier += 1
            self._note_open(st, saturated=False)
            return None
        options = [ri for ri in self._choices(st) if self._progress(st, ri)]
        if not options:
            self._note_open(st, saturated=True)
        options.sort(key=lambda ri: self._rank(st, ri))
        for ri in options:
            kids = []
            for child in self._step(st, ri, counted=True):
                got = self.prove(child, depth - 1)
                if got is None:
                    break
                kids.append(got)
            else:
                return _Found(st, ri, kids)
        self.failed[key] = depth
        return None

    def _note_open(self, st: _State, saturated: bool):
        if self.open_leaf is None or (saturated and not self.open_leaf.saturated):
            self.open_leaf = Branch(tuple(f for f in st.ant if is_atomic(f)),
                                    tuple(f for f in st.suc if is_atomic(f)), saturated)


def _to_g1(found: _Found) -> ProofNode:
    st = found.state
    target = st.sequent()
    ri = found.rule
    if ri.tag == R.Ax:
        return adjust(ax(ri.main), target)
    sh = shape(ri)
    prems = [adjust(_to_g1(k), sh.premise(target, i)) for i, k in enumerate(found.children)]
    return adjust(infer(ri, *prems), target)


def _distinct(s: Sequent) -> _State:
    return _State(tuple(dict.fromkeys(s.ant)), tuple(dict.fromkeys(s.suc)))


def prove(goal: Sequent, calc: Calc, budget: SearchBudget = SearchBudget()) -> ProofNode | Exhausted:
    """Search for a proof of ``goal``; a found proof is kernel-checked."""
    search = _Search(goal, calc, budget)
    root = _distinct(goal)
    for depth in range(budget.max_depth + 1):
        search.frontier = 0
        search.open_leaf = None
        found = search.prove(root, depth)
        if found is not None:
            proof = adjust(_to_g1(found), goal)
            report = check_proof(proof, calc)
            if not report.valid or proof.conclusion != goal:
                raise AssertionError(f"search produced an invalid proof:\n{report}")
            return proof
        if search.frontier == 0:
            break                 # nothing was cut off by depth: deeper is pointless
    return Exhausted(search.frontier, search.open_leaf)


def countermodel_hint(goal: Sequent, calc: Calc = Calc.GPFL_EQ_I,
                      budget: SearchBudget = SearchBudget(max_depth=4)) -> Branch | None:
    """One open branch left by a failed search, or None when the goal is proved."""
    result = prove(goal, calc, budget)
    if isinstance(result, Exhausted):
        return result.branch
    return None
