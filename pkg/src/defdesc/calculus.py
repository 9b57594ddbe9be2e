"""Rule schemata for every calculus variant and the one-step checker.

Each rule is described by a :class:`Shape`: the principal formulas of the
conclusion (split by side), the active formulas each premise adds to the
shared context, the eigenvariables and the atomicity side conditions.  The
checker and the forward constructor both read the same shape, so a step is
valid exactly when ``premise_i == context + actives_i`` for the context that
remains after removing the principals from the conclusion.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence as Seq

from .syntax import (
    And, Desc, E, Eq, Exists, Forall, Formula, Func, Imp, Not, Or,
    Param, Pred, Template, Term, Var, has_var, instantiate, is_atomic, params, show,
)


# -- sequents ---------------------------------------------------------------

class Sequent:
    """A pair of finite multisets.  Order is kept for printing only."""
    __slots__ = ("ant", "suc", "_key")

    def __init__(self, ant: Iterable[Formula] = (), suc: Iterable[Formula] = ()):
        self.ant = tuple(ant)
        self.suc = tuple(suc)
        self._key = None

    def key(self):
        if self._key is None:
            self._key = (frozenset(Counter(self.ant).items()), frozenset(Counter(self.suc).items()))
        return self._key

    def __eq__(self, other):
        return isinstance(other, Sequent) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __iter__(self):
        yield from self.ant
        yield from self.suc

    def __repr__(self):
        return f"Sequent({self.ant!r}, {self.suc!r})"

    def __str__(self):
        return show_sequent(self)

    def __add__(self, other: "Sequent") -> "Sequent":
        return Sequent(self.ant + other.ant, self.suc + other.suc)

    def __sub__(self, other: "Sequent") -> "Sequent":
        return Sequent(msub(self.ant, other.ant), msub(self.suc, other.suc))

    def contains(self, other: "Sequent") -> bool:
        return mcontains(self.ant, other.ant) and mcontains(self.suc, other.suc)


def show_sequent(s: Sequent) -> str:
    left = ", ".join(show(f) for f in s.ant)
    right = ", ".join(show(f) for f in s.suc)
    return f"{left} => {right}".strip()


def mcontains(big: Seq[Formula], small: Seq[Formula]) -> bool:
    have = Counter(big)
    have.subtract(Counter(small))
    return all(v >= 0 for v in have.values())


def msub(big: Seq[Formula], small: Seq[Formula]) -> tuple[Formula, ...]:
    """Multiset difference keeping the order of ``big``; ``small`` must be contained."""
    need = Counter(small)
    out = []
    for f in big:
        if need[f] > 0:
            need[f] -= 1
        else:
            out.append(f)
    if any(v > 0 for v in need.values()):
        raise ValueError("multiset difference undefined")
    return tuple(out)


# -- rules and calculi --------------------------------------------------------

class Rule(enum.Enum):
    Ax = "Ax"; Cut = "Cut"; Hyp = "Hyp"
    LW = "LW"; RW = "RW"; LC = "LC"; RC = "RC"
    LNeg = "LNeg"; RNeg = "RNeg"; LAnd = "LAnd"; RAnd = "RAnd"
    LOr = "LOr"; ROr = "ROr"; LImp = "LImp"; RImp = "RImp"
    LAll = "LAll"; RAll = "RAll"; LEx = "LEx"; REx = "REx"
    EqI = "EqI"; EqE = "EqE"
    RI = "RI"; LI1 = "LI1"; LI2 = "LI2"; LI3 = "LI3"; LI4 = "LI4"; LI5 = "LI5"
    LI2P = "LI2P"
    RIS = "RIS"; LI1S = "LI1S"; LI2SI = "LI2SI"; LI4SI = "LI4SI"; LI5S = "LI5S"
    NEI = "NEI"; NEE = "NEE"; NEEf = "NEEf"
    RIN = "RIN"; LIN1 = "LIN1"; LIN2 = "LIN2"
    RIC = "RIC"; LIC1 = "LIC1"; LIC2 = "LIC2"
    RAllC = "RAllC"; LAllC = "LAllC"; RExC = "RExC"; LExC = "LExC"

    def __str__(self):
        return self.value


class Calc(enum.Enum):
    GPFL = "GPFL"
    GPFL_EQ = "GPFL_EQ"
    GPFL_EQ_I = "GPFL_EQ_I"
    GPFL_EQ_I_S = "GPFL_EQ_I_S"
    GNFL_EQ = "GNFL_EQ"
    GNFL_EQ_I = "GNFL_EQ_I"
    GC_EQ_I = "GC_EQ_I"

    def __str__(self):
        return self.value


R = Rule
_STRUCT = {R.Ax, R.Cut, R.LW, R.RW, R.LC, R.RC}
_PROP = {R.LNeg, R.RNeg, R.LAnd, R.RAnd, R.LOr, R.ROr, R.LImp, R.RImp}
_FREE_Q = {R.LAll, R.RAll, R.LEx, R.REx}
_CLASSICAL_Q = {R.LAllC, R.RAllC, R.LExC, R.RExC}

_GPFL = frozenset(_STRUCT | _PROP | _FREE_Q)
_GPFL_EQ = _GPFL | {R.EqI, R.EqE}
_GNFL_EQ = _GPFL | {R.EqI, R.NEI, R.NEE, R.NEEf}
ADMITTED: dict[Calc, frozenset[Rule]] = {
    Calc.GPFL: _GPFL,
    Calc.GPFL_EQ: _GPFL_EQ,
    Calc.GPFL_EQ_I: _GPFL_EQ | {R.RI, R.LI1, R.LI2, R.LI3, R.LI4, R.LI5},
    Calc.GPFL_EQ_I_S: _GPFL_EQ | {R.RI, R.RIS, R.LI1S, R.LI2SI, R.LI3, R.LI4SI, R.LI5S},
    Calc.GNFL_EQ: _GNFL_EQ,
    Calc.GNFL_EQ_I: _GNFL_EQ | {R.RIN, R.LIN1, R.LIN2},
    Calc.GC_EQ_I: frozenset(_STRUCT | _PROP | _CLASSICAL_Q | {R.EqI, R.EqE, R.RIC, R.LIC1, R.LIC2}),
}


def admitted_rules(calc: Calc) -> frozenset[Rule]:
    return ADMITTED[calc]


# -- errors -----------------------------------------------------------------

class StepError(Exception):
    kind = "StepError"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def __str__(self):
        return f"{self.kind}: {self.message}"


class ContextMismatch(StepError):
    kind = "ContextMismatch"


class EigenvariableViolation(StepError):
    kind = "EigenvariableViolation"


class AtomicityViolation(StepError):
    kind = "AtomicityViolation"


class PrincipalMissing(StepError):
    kind = "PrincipalMissing"


class WitnessMismatch(StepError):
    kind = "WitnessMismatch"


class RuleNotInCalculus(StepError):
    kind = "RuleNotInCalculus"


class ArityError(StepError):
    kind = "ArityError"


class FreshnessUnavailable(StepError):
    kind = "FreshnessUnavailable"


# -- rule instances -----------------------------------------------------------

@dataclass(frozen=True)
class RuleInstance:
    """Metadata that makes a step checkable by matching alone.

    ``main`` is the principal compound (or the weakened / contracted / axiom /
    cut formula).  ``terms`` are the witnesses in display order, ``eigen`` the
    eigenvariables, ``template`` the atomic ``A`` of ``A_t^x`` where the rule
    needs one.
    """
    tag: Rule
    main: Formula | None = None
    terms: tuple[Term, ...] = ()
    eigen: tuple[Param, ...] = ()
    template: Template | None = None

    def with_(self, **kw) -> "RuleInstance":
        return replace(self, **kw)


@dataclass
class Shape:
    left: list[Formula] = field(default_factory=list)
    right: list[Formula] = field(default_factory=list)
    premises: list[tuple[list[Formula], list[Formula]]] = field(default_factory=list)
    eigen: tuple[Param, ...] = ()

    @property
    def principals(self) -> Sequent:
        return Sequent(self.left, self.right)

    def premise(self, ctx: Sequent, i: int) -> Sequent:
        ant, suc = self.premises[i]
        return Sequent(ctx.ant + tuple(ant), ctx.suc + tuple(suc))


_NTERMS = {
    R.LAll: 1, R.REx: 1, R.LAllC: 1, R.RExC: 1, R.EqI: 2, R.EqE: 1,
    R.RI: 1, R.LI1: 1, R.LI2: 2, R.LI4: 1, R.LI2P: 2,
    R.RIS: 1, R.LI1S: 1, R.LI2SI: 2, R.LI4SI: 1, R.LI5S: 0,
    R.NEI: 0, R.NEE: 1, R.NEEf: 1, R.RIN: 1, R.LIN2: 2, R.RIC: 1, R.LIC2: 2,
}
_NEIGEN = {
    R.RAll: 1, R.LEx: 1, R.RAllC: 1, R.LExC: 1, R.RI: 1, R.LI1: 2, R.LI3: 1, R.LI5: 1,
    R.RIS: 1, R.LI1S: 2, R.LI5S: 1, R.RIN: 1, R.LIN1: 1, R.RIC: 1, R.LIC1: 1,
}
_TEMPLATED = {R.EqI, R.LI2, R.LI4, R.LIN2, R.LIC2}
_ARITY = {
    R.Ax: 0, R.Hyp: 0, R.Cut: 2, R.RAnd: 2, R.LOr: 2, R.LImp: 2,
    R.RI: 4, R.LI1: 4, R.LI2: 5, R.LI4: 4, R.LI5: 2, R.LI2P: 4,
    R.RIS: 3, R.LI1S: 3, R.LI2SI: 3, R.LI4SI: 2,
    R.RIN: 4, R.LIN2: 5, R.RIC: 3, R.LIC2: 3,
}


def premise_count(tag: Rule) -> int:
    return _ARITY.get(tag, 1)


def eigen_count(tag: Rule) -> int:
    return _NEIGEN.get(tag, 0)


def _need(ri: RuleInstance, cls, what: str):
    if not isinstance(ri.main, cls):
        raise PrincipalMissing(f"{ri.tag} needs a principal {what}, got "
                               f"{show(ri.main) if ri.main is not None else 'none'}")
    return ri.main


def _desc(ri: RuleInstance, scope: str | None = None) -> Desc:
    d = _need(ri, Desc, "I-formula")
    if scope == "exists" and d.scope != E(Var(0)):
        raise PrincipalMissing(f"{ri.tag} needs Ix[F, E!x], got {show(d)}")
    if scope == "eq":
        s = d.scope
        if not (isinstance(s, Eq) and s.left == Var(0) and not has_var(s.right)):
            raise PrincipalMissing(f"{ri.tag} needs Ix[F, x=t], got {show(d)}")
    return d


def _atomic_template(ri: RuleInstance) -> Template:
    if ri.template is None:
        raise WitnessMismatch(f"{ri.tag} needs a substitution template")
    if not is_atomic(ri.template.body):
        raise AtomicityViolation(f"{ri.tag}: template {show(ri.template.body, ('x',))} is not atomic")
    return ri.template


def shape(ri: RuleInstance) -> Shape:
    """Principals, premise actives and eigenvariables of one rule application."""
    tag = ri.tag
    if len(ri.terms) != _NTERMS.get(tag, 0):
        raise ArityError(f"{tag} takes {_NTERMS.get(tag, 0)} witness terms, got {len(ri.terms)}")
    for t in ri.terms:
        if has_var(t):
            raise WitnessMismatch(f"{tag}: witness {t} is not closed")
    if len(ri.eigen) != _NEIGEN.get(tag, 0):
        raise ArityError(f"{tag} takes {_NEIGEN.get(tag, 0)} eigenvariables, got {len(ri.eigen)}")
    for a in ri.eigen:
        if not isinstance(a, Param):
            raise EigenvariableViolation(f"{tag}: eigenvariable {a} is not a parameter")
    if len(set(ri.eigen)) != len(ri.eigen):
        raise EigenvariableViolation(f"{tag}: eigenvariables must be distinct")
    if tag in _TEMPLATED:
        _atomic_template(ri)
    t = ri.terms
    a = ri.eigen
    sh = Shape(eigen=a)
    P = sh.premises

    if tag in (R.Ax, R.Hyp):
        return sh
    if tag == R.Cut:
        A = _need(ri, Formula, "cut formula")
        P.extend([([], [A]), ([A], [])])
        return sh
    if tag in (R.LW, R.RW, R.LC, R.RC):
        A = _need(ri, Formula, "formula")
        side = sh.left if tag in (R.LW, R.LC) else sh.right
        side.append(A)
        twice = [A, A] if tag in (R.LC, R.RC) else []
        P.append((twice, []) if tag in (R.LW, R.LC) else ([], twice))
        return sh
    if tag == R.LNeg:
        sh.left.append(_need(ri, Not, "negation"))
        P.append(([], [ri.main.body]))
    elif tag == R.RNeg:
        sh.right.append(_need(ri, Not, "negation"))
        P.append(([ri.main.body], []))
    elif tag == R.LAnd:
        f = _need(ri, And, "conjunction"); sh.left.append(f)
        P.append(([f.left, f.right], []))
    elif tag == R.RAnd:
        f = _need(ri, And, "conjunction"); sh.right.append(f)
        P.extend([([], [f.left]), ([], [f.right])])
    elif tag == R.LOr:
        f = _need(ri, Or, "disjunction"); sh.left.append(f)
        P.extend([([f.left], []), ([f.right], [])])
    elif tag == R.ROr:
        f = _need(ri, Or, "disjunction"); sh.right.append(f)
        P.append(([], [f.left, f.right]))
    elif tag == R.LImp:
        f = _need(ri, Imp, "implication"); sh.left.append(f)
        P.extend([([], [f.left]), ([f.right], [])])
    elif tag == R.RImp:
        f = _need(ri, Imp, "implication"); sh.right.append(f)
        P.append(([f.left], [f.right]))
    elif tag == R.LAll:
        f = _need(ri, Forall, "universal"); sh.left.extend([E(t[0]), f])
        P.append(([instantiate(f.body, t[0])], []))
    elif tag == R.RAll:
        f = _need(ri, Forall, "universal"); sh.right.append(f)
        P.append(([E(a[0])], [instantiate(f.body, a[0])]))
    elif tag == R.LEx:
        f = _need(ri, Exists, "existential"); sh.left.append(f)
        P.append(([E(a[0]), instantiate(f.body, a[0])], []))
    elif tag == R.REx:
        f = _need(ri, Exists, "existential"); sh.left.append(E(t[0])); sh.right.append(f)
        P.append(([], [instantiate(f.body, t[0])]))
    elif tag == R.LAllC:
        f = _need(ri, Forall, "universal"); sh.left.append(f)
        P.append(([instantiate(f.body, t[0])], []))
    elif tag == R.RAllC:
        f = _need(ri, Forall, "universal"); sh.right.append(f)
        P.append(([], [instantiate(f.body, a[0])]))
    elif tag == R.LExC:
        f = _need(ri, Exists, "existential"); sh.left.append(f)
        P.append(([instantiate(f.body, a[0])], []))
    elif tag == R.RExC:
        f = _need(ri, Exists, "existential"); sh.right.append(f)
        P.append(([], [instantiate(f.body, t[0])]))
    elif tag == R.EqI:
        A = ri.template
        sh.left.extend([Eq(t[0], t[1]), A(t[0])])
        P.append(([A(t[1])], []))
    elif tag == R.EqE:
        P.append(([Eq(t[0], t[0])], []))
    elif tag == R.NEI:
        f = _need(ri, E, "existence atom"); sh.left.append(f)
        P.append(([Eq(f.arg, f.arg)], []))
    elif tag in (R.NEE, R.NEEf):
        if tag == R.NEE:
            f = _need(ri, Pred, "predicate atom")
            args = f.args
        else:
            f = _need(ri, E, "existence atom")
            if not isinstance(f.arg, Func):
                raise PrincipalMissing(f"NEEf needs E!f(...), got {show(f)}")
            args = f.arg.args
        if t[0] not in args:
            raise WitnessMismatch(f"{tag}: {t[0]} is not an argument of {show(f)}")
        sh.left.append(f)
        P.append(([E(t[0])], []))
    else:
        _shape_desc(ri, sh)
    return sh


def _shape_desc(ri: RuleInstance, sh: Shape) -> None:
    tag, t, a, P = ri.tag, ri.terms, ri.eigen, sh.premises
    if tag in (R.RI, R.RIS, R.RIN, R.RIC):
        d = _desc(ri)
        F, G = d.restrictor, d.scope
        sh.right.append(d)
        if tag == R.RIS:
            sh.left.append(E(t[0]))
        P.append(([], [instantiate(F, t[0])]))
        P.append(([], [instantiate(G, t[0])]))
        if tag in (R.RI, R.RIN):
            P.append(([], [E(t[0])]))
        uniq = [instantiate(F, a[0])]
        if tag in (R.RI, R.RIS):
            uniq = [E(a[0])] + uniq
        P.append((uniq, [Eq(a[0], t[0])]))
    elif tag in (R.LI1, R.LI1S):
        d = _desc(ri)
        F, G = d.restrictor, d.scope
        sh.left.append(d)
        P.append(([], [instantiate(F, t[0])]))
        if tag == R.LI1:
            P.append(([], [E(t[0])]))
        else:
            sh.left.insert(0, E(t[0]))
        P.append(([instantiate(F, a[0]), E(a[0])], [Eq(a[0], t[0])]))
        P.append(([instantiate(F, a[1]), instantiate(G, a[1]), E(a[1])], []))
    elif tag in (R.LI2, R.LIN2, R.LIC2):
        d = _desc(ri, "exists" if tag == R.LI2 else None)
        F = d.restrictor
        A = ri.template
        sh.left.append(d)
        sh.right.append(A(t[0]))
        Ft1, Ft2 = instantiate(F, t[0]), instantiate(F, t[1])
        if tag == R.LI2:
            order = [Ft1, Ft2, E(t[0]), E(t[1])]
        elif tag == R.LIN2:
            order = [E(t[0]), E(t[1]), Ft1, Ft2]
        else:
            order = [Ft1, Ft2]
        P.extend(([], [f]) for f in order)
        P.append(([], [A(t[1])]))
    elif tag == R.LI2P:
        d = _desc(ri, "exists")
        F = d.restrictor
        sh.left.append(d)
        sh.right.append(Eq(t[0], t[1]))
        for f in (instantiate(F, t[0]), instantiate(F, t[1]), E(t[0]), E(t[1])):
            P.append(([], [f]))
    elif tag in (R.LI3, R.LI5, R.LI5S):
        d = _desc(ri, "exists" if tag == R.LI3 else "eq")
        sh.left.append(d)
        if tag == R.LI5:
            P.append(([], [E(d.scope.right)]))
        if tag == R.LI5S:
            sh.left.insert(0, E(d.scope.right))
        P.append(([instantiate(d.restrictor, a[0]), E(a[0])], []))
    elif tag == R.LI4:
        d = _desc(ri, "eq")
        t2 = d.scope.right
        A = ri.template
        sh.left.append(d)
        sh.right.append(A(t[0]))
        for f in (instantiate(d.restrictor, t[0]), E(t[0]), E(t2), A(t2)):
            P.append(([], [f]))
    elif tag == R.LI2SI:
        d = _desc(ri, "exists")
        sh.left.extend([E(t[0]), E(t[1]), d])
        P.append(([], [instantiate(d.restrictor, t[0])]))
        P.append(([], [instantiate(d.restrictor, t[1])]))
        P.append(([Eq(t[0], t[1])], []))
    elif tag == R.LI4SI:
        d = _desc(ri, "eq")
        t2 = d.scope.right
        sh.left.extend([E(t[0]), E(t2), d])
        P.append(([], [instantiate(d.restrictor, t[0])]))
        P.append(([Eq(t[0], t2)], []))
    elif tag == R.LIN1 or tag == R.LIC1:
        d = _desc(ri)
        sh.left.append(d)
        acts = [instantiate(d.restrictor, a[0]), instantiate(d.scope, a[0])]
        if tag == R.LIN1:
            acts.append(E(a[0]))
        P.append((acts, []))
    else:
        raise RuleNotInCalculus(f"unknown rule {tag}")


# -- checking -----------------------------------------------------------------

def check_step(conclusion: Sequent, rule: RuleInstance, premises: Seq[Sequent],
               calc: Calc) -> None:
    """Raise a :class:`StepError` unless the step is a correct rule application."""
    if rule.tag != R.Hyp and rule.tag not in ADMITTED[calc]:
        raise RuleNotInCalculus(f"{rule.tag} is not a rule of {calc}")
    if len(premises) != premise_count(rule.tag):
        raise ArityError(f"{rule.tag} takes {premise_count(rule.tag)} premises, got {len(premises)}")
    sh = shape(rule)
    if rule.tag == R.Hyp:
        return
    if rule.tag == R.Ax:
        A = _need(rule, Formula, "axiom formula")
        if conclusion != Sequent([A], [A]):
            raise ContextMismatch(f"axiom must be {show(A)} => {show(A)}")
        return
    if rule.tag == R.Cut:
        A = rule.main
        p1, p2 = premises
        if A not in p1.suc:
            raise PrincipalMissing(f"cut formula {show(A)} missing from left premise succedent")
        if A not in p2.ant:
            raise PrincipalMissing(f"cut formula {show(A)} missing from right premise antecedent")
        expect = Sequent(p1.ant + msub(p2.ant, [A]), msub(p1.suc, [A]) + p2.suc)
        if conclusion != expect:
            raise ContextMismatch("cut conclusion is not the union of the premise contexts")
        return
    if not conclusion.contains(sh.principals):
        missing = [show(f) for f in sh.left if f not in conclusion.ant] + \
                  [show(f) for f in sh.right if f not in conclusion.suc]
        raise PrincipalMissing(f"{rule.tag}: principal formula(s) {missing or '(multiplicity)'} "
                               f"not in conclusion")
    used = params(conclusion)
    for a in sh.eigen:
        if a in used:
            raise EigenvariableViolation(f"{rule.tag}: eigenvariable {a} occurs in the conclusion")
    ctx = conclusion - sh.principals
    for i, prem in enumerate(premises):
        want = sh.premise(ctx, i)
        if prem != want:
            raise ContextMismatch(f"{rule.tag}: premise {i + 1} is {prem}, expected {want}")


def infer_conclusion(rule: RuleInstance, premises: Seq[Sequent]) -> Sequent:
    """The conclusion a rule yields from ``premises`` (forward direction)."""
    sh = shape(rule)
    if rule.tag == R.Cut:
        p1, p2 = premises
        A = rule.main
        if A not in p1.suc or A not in p2.ant:
            raise PrincipalMissing(f"cut formula {show(A)} missing from a premise")
        return Sequent(p1.ant + msub(p2.ant, [A]), msub(p1.suc, [A]) + p2.suc)
    if rule.tag in (R.Ax,):
        return Sequent([rule.main], [rule.main])
    if len(premises) != len(sh.premises):
        raise ArityError(f"{rule.tag} takes {len(sh.premises)} premises, got {len(premises)}")
    ant, suc = sh.premises[0]
    try:
        ctx = premises[0] - Sequent(ant, suc)
    except ValueError:
        raise ContextMismatch(f"{rule.tag}: premise 1 lacks its active formulas") from None
    return Sequent(tuple(sh.left) + ctx.ant, ctx.suc + tuple(sh.right))


def instantiate_schema(rule: RuleInstance, gamma: Iterable[Formula] = (),
                       delta: Iterable[Formula] = ()) -> tuple[Sequent, list[Sequent], RuleInstance]:
    """Conclusion and premises of ``rule`` over the context ``gamma => delta``."""
    ctx = Sequent(gamma, delta)
    sh = shape(rule)
    if rule.tag == R.Ax:
        return Sequent([rule.main], [rule.main]), [], rule
    if rule.tag == R.Cut:
        A = rule.main
        prems = [Sequent(ctx.ant, ctx.suc + (A,)), Sequent((A,) + ctx.ant, ctx.suc)]
        return Sequent(ctx.ant * 2, ctx.suc * 2), prems, rule
    conclusion = Sequent(tuple(sh.left) + ctx.ant, ctx.suc + tuple(sh.right))
    used = params(conclusion)
    for a in sh.eigen:
        if a in used:
            raise FreshnessUnavailable(f"eigenvariable {a} is not fresh for the context")
    return conclusion, [sh.premise(ctx, i) for i in range(len(sh.premises))], rule
