"""Executable cut elimination.

The reductions follow the classical multicut scheme: ``left_reduce`` climbs
the left subproof until the cut formula is principal there, then hands over
to ``right_reduce``, which climbs the right subproof until the formula is
principal on both sides and the cut can be traded for cuts on smaller
formulas.  ``k`` counts how many copies of the cut formula are removed at
once, so contraction never needs special treatment beyond ``k+1``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from . import derived
from .calculus import ADMITTED, Calc, Rule, RuleInstance, Sequent, msub, shape
from .kernel import ProofNode, Path, adjust, ax, cut_degrees, infer, proof_params
from .kernel import cut as raw_cut
from .search import SearchBudget, prove
from .syntax import E, Eq, Desc, FreshSupply, Formula, Param, Term, degree, instantiate
from .syntax import is_atomic, params, replace_term, show

R = Rule

# search allowance for replacing an atomic cut the reductions cannot handle
GAP_BUDGET = SearchBudget(max_depth=10, max_contractions_per_formula=4, max_witness_terms=0)


class PreconditionViolated(Exception):
    pass


class ReductionGap(PreconditionViolated):
    """An atomic cut whose formula is introduced by non-axiom rules on both sides."""


class DegreeViolation(AssertionError):
    pass


@dataclass
class TraceStep:
    case: str
    formula: str
    degree: int
    k: int


@dataclass
class Iteration:
    path: Path
    formula: str
    degree: int
    measure_before: tuple[int, int]
    measure_after: tuple[int, int]


@dataclass
class ReductionTrace:
    steps: list[TraceStep] = field(default_factory=list)
    iterations: list[Iteration] = field(default_factory=list)
    aux_cuts: int = 0

    @property
    def measure_before(self) -> tuple[int, int] | None:
        return self.iterations[0].measure_before if self.iterations else None

    @property
    def measure_after(self) -> tuple[int, int] | None:
        return self.iterations[-1].measure_after if self.iterations else None

    @property
    def measures(self) -> list[tuple[int, int]]:
        if not self.iterations:
            return []
        return [self.iterations[0].measure_before] + [it.measure_after for it in self.iterations]

    def case_counts(self) -> Counter:
        return Counter(s.case for s in self.steps)

    def to_json(self) -> dict:
        return {
            "iterations": [
                {"path": list(it.path), "formula": it.formula, "degree": it.degree,
                 "measure_before": list(it.measure_before), "measure_after": list(it.measure_after)}
                for it in self.iterations],
            "cases": dict(self.case_counts()),
            "aux_cuts": self.aux_cuts,
        }


def measure(p: ProofNode) -> tuple[int, int]:
    degs = cut_degrees(p)
    if not degs:
        return (0, 0)
    top = max(degs)
    return top, degs.count(top)      # atomic cuts count too: (0, n)


# -- substitution ---------------------------------------------------------------

def _subst_rule(ri: RuleInstance, a: Param, t: Term) -> RuleInstance:
    return RuleInstance(
        ri.tag,
        None if ri.main is None else replace_term(ri.main, a, t),
        tuple(replace_term(s, a, t) for s in ri.terms),
        ri.eigen,
        None if ri.template is None else replace_term(ri.template, a, t),
    )


def _seq_replace(s: Sequent, a: Param, t: Term) -> Sequent:
    return Sequent([replace_term(f, a, t) for f in s.ant], [replace_term(f, a, t) for f in s.suc])


def rename_parameter(p: ProofNode, a: Param, t: Term, supply: FreshSupply | None = None) -> ProofNode:
    """Replace parameter ``a`` by ``t`` throughout ``p``, keeping it valid.

    Eigenvariables equal to ``a`` or occurring in ``t`` are renamed to fresh
    parameters in their own subproof first.
    """
    if a == t or a not in proof_params(p):
        return p
    if supply is None:
        supply = FreshSupply(proof_params(p) | params(t) | {a})

    def go(node: ProofNode, b: Param, s: Term) -> ProofNode:
        ri, prems = node.rule, list(node.premises)
        if set(ri.eigen) & (params(s) | {b}):
            eig = list(ri.eigen)
            for i, e in enumerate(eig):
                if e == b or e in params(s):
                    new = supply()
                    prems = [go(q, e, new) for q in prems]
                    eig[i] = new
            ri = ri.with_(eigen=tuple(eig))
        return ProofNode(_seq_replace(node.conclusion, b, s), _subst_rule(ri, b, s),
                         tuple(go(q, b, s) for q in prems))

    return go(p, a, t)


def freshen(node: ProofNode, avoid: set, supply: FreshSupply) -> ProofNode:
    """Rename the eigenvariables of ``node``'s last step that lie in ``avoid``."""
    ri = node.rule
    if not ri.eigen or not (set(ri.eigen) & avoid):
        return node
    eig, prems = list(ri.eigen), list(node.premises)
    for i, e in enumerate(eig):
        if e in avoid:
            new = supply()
            prems = [rename_parameter(q, e, new, supply) for q in prems]
            eig[i] = new
    return ProofNode(node.conclusion, ri.with_(eigen=tuple(eig)), tuple(prems))


# -- reduction lemmas -----------------------------------------------------------

_RI_FAMILY = {R.RI, R.RIS, R.RIN, R.RIC}
_INSTANCE_FAMILY = {R.LI1, R.LI1S, R.LIN1, R.LIC1, R.LI3, R.LI5, R.LI5S}
_IDENTITY_FAMILY = {R.LI2, R.LIN2, R.LIC2, R.LI4, R.LI2SI, R.LI4SI}

_PAIRS = {
    R.RNeg: {R.LNeg}, R.RAnd: {R.LAnd}, R.ROr: {R.LOr}, R.RImp: {R.LImp},
    R.RAll: {R.LAll}, R.REx: {R.LEx}, R.RAllC: {R.LAllC}, R.RExC: {R.LExC},
    **{r: _INSTANCE_FAMILY | _IDENTITY_FAMILY for r in _RI_FAMILY},
}


def _count(xs, A) -> int:
    return sum(1 for f in xs if f == A)


class Reducer:
    """Carries the fresh-name supply, degree bound and trace through one reduction."""

    def __init__(self, bound: int, supply: FreshSupply, trace: ReductionTrace | None = None,
                 calc: Calc | None = None):
        self.bound = bound
        self.supply = supply
        self.trace = trace if trace is not None else ReductionTrace()
        self.calc = calc

    def note(self, case: str, A: Formula, k: int) -> None:
        self.trace.steps.append(TraceStep(case, show(A), degree(A), k))

    def cut(self, p1: ProofNode, p2: ProofNode, A: Formula) -> ProofNode:
        if degree(A) >= self.bound:
            raise DegreeViolation(f"auxiliary cut on {show(A)} has degree {degree(A)}, "
                                  f"bound is {self.bound}")
        self.trace.aux_cuts += 1
        return raw_cut(p1, p2, A)

    def _reapply(self, node: ProofNode, prems: list[ProofNode]) -> ProofNode:
        if node.tag == R.Cut:
            return self.cut(prems[0], prems[1], node.rule.main)
        return infer(node.rule, *prems)

    # -- left ------------------------------------------------------------------

    def left(self, d1: ProofNode, d2: ProofNode, A: Formula, k: int) -> ProofNode:
        s1, s2 = d1.conclusion, d2.conclusion
        if _count(s1.suc, A) < k or A not in s2.ant:
            raise PreconditionViolated(f"left reduction of {show(A)}^{k}: {s1} / {s2}")
        if k == 0:
            return d1
        tag = d1.tag
        theta, lam = msub(s2.ant, [A]), s2.suc
        target = Sequent(s1.ant + theta * k, msub(s1.suc, [A] * k) + lam * k)
        if tag == R.Ax:
            self.note("left.axiom", A, k)
            return d2
        if tag == R.Hyp:
            raise PreconditionViolated(f"cannot reduce {show(A)} into an open hypothesis {s1}")
        if tag == R.Cut:
            self.note("left.cut", A, k)
            p1, p2 = d1.premises
            C = d1.rule.main
            k1 = min(k, _count(msub(p1.conclusion.suc, [C]), A))
            r1 = self.left(p1, d2, A, k1)
            r2 = self.left(p2, d2, A, k - k1)
            return self.cut(r1, r2, C)
        sh = shape(d1.rule)
        pr = _count(sh.right, A)
        if pr == 0 or _count(s1.suc, A) - pr >= k:
            self.note("left.parametric", A, k)
            d1 = freshen(d1, params(s2), self.supply)
            return self._reapply(d1, [self.left(q, d2, A, k) for q in d1.premises])
        if tag == R.RW:
            self.note("left.weakening", A, k)
            return adjust(self.left(d1.premises[0], d2, A, k - 1), target)
        if tag == R.RC:
            self.note("left.contraction", A, k)
            return adjust(self.left(d1.premises[0], d2, A, k + 1), target)
        self.note(f"left.principal:{tag}", A, k)
        d1 = freshen(d1, params(s2), self.supply)
        if k > 1:
            d1x = infer(d1.rule, *[self.left(q, d2, A, k - 1) for q in d1.premises])
        else:
            d1x = d1
        try:
            return adjust(self.right(d1x, d2, A, 1), target)
        except ReductionGap:
            # an atom introduced on the right by a rule other than Ax: if
            # some premise already shows it, reduce there instead
            for i, (ant, suc) in enumerate(sh.premises):
                if not ant and list(suc) == [A]:
                    self.note("left.shortcut", A, k)
                    return adjust(self.left(d1.premises[i], d2, A, k), target)
            return self._bridge_gap(d1, d2, A, target)

    def _bridge_gap(self, d1: ProofNode, d2: ProofNode, A: Formula, target: Sequent) -> ProofNode:
        """Replace an irreducible atomic cut by a searched cut-free proof of its conclusion.

        Both sides are cut-free here, since the cut formula has degree 0.
        """
        calc = self.calc or _smallest_calc(d1, d2)
        found = prove(Sequent(dict.fromkeys(target.ant), dict.fromkeys(target.suc)), calc,
                      GAP_BUDGET) if calc is not None else None
        if not isinstance(found, ProofNode):
            raise ReductionGap(f"atomic cut on {show(A)} between {d1.tag} and a non-axiom "
                               f"rule, and search found no cut-free replacement")
        self.note("gap.search", A, 1)
        return adjust(found, target)

    # -- right -----------------------------------------------------------------

    def right(self, d1: ProofNode, d2: ProofNode, A: Formula, k: int) -> ProofNode:
        s1, s2 = d1.conclusion, d2.conclusion
        if A not in s1.suc or _count(s2.ant, A) < k:
            raise PreconditionViolated(f"right reduction of {show(A)}^{k}: {s1} / {s2}")
        if k == 0:
            return d2
        if d1.tag == R.Ax:
            self.note("right.left-axiom", A, k)
            return d2
        theta, lam = s1.ant, msub(s1.suc, [A])
        target = Sequent(theta * k + msub(s2.ant, [A] * k), lam * k + s2.suc)
        tag = d2.tag
        if tag == R.Ax:
            self.note("right.axiom", A, k)
            return d1
        if tag == R.Hyp:
            raise PreconditionViolated(f"cannot reduce {show(A)} into an open hypothesis {s2}")
        if tag == R.Cut:
            self.note("right.cut", A, k)
            p1, p2 = d2.premises
            k1 = min(k, _count(p1.conclusion.ant, A))
            r1 = self.right(d1, p1, A, k1)
            r2 = self.right(d1, p2, A, k - k1)
            return self.cut(r1, r2, d2.rule.main)
        sh = shape(d2.rule)
        pl = _count(sh.left, A)
        if pl == 0 or _count(s2.ant, A) - pl >= k:
            self.note("right.parametric", A, k)
            d2 = freshen(d2, params(s1), self.supply)
            return self._reapply(d2, [self.right(d1, q, A, k) for q in d2.premises])
        if tag == R.LW:
            self.note("right.weakening", A, k)
            return adjust(self.right(d1, d2.premises[0], A, k - 1), target)
        if tag == R.LC:
            self.note("right.contraction", A, k)
            return adjust(self.right(d1, d2.premises[0], A, k + 1), target)
        if d2.tag not in _PAIRS.get(d1.tag, ()):
            if is_atomic(A):
                raise ReductionGap(f"atomic cut on {show(A)} between {d1.tag} and {d2.tag}")
            raise PreconditionViolated(f"{show(A)} is not principal in {d1.tag} / {d2.tag}")
        self.note(f"right.principal:{d1.tag}/{d2.tag}", A, k)
        d2 = freshen(d2, params(s1), self.supply)
        recs = [self.right(d1, q, A, k - 1) for q in d2.premises]
        return adjust(self._principal(d1, d2, recs, A), target)

    # -- principal pairs ---------------------------------------------------------

    def _principal(self, d1: ProofNode, d2: ProofNode, recs: list[ProofNode],
                   A: Formula) -> ProofNode:
        t1, t2 = d1.tag, d2.tag
        P = d1.premises
        if t1 == R.RNeg:
            return self.cut(recs[0], P[0], A.body)
        if t1 == R.RAnd:
            return self.cut(P[1], self.cut(P[0], recs[0], A.left), A.right)
        if t1 == R.ROr:
            return self.cut(self.cut(P[0], recs[0], A.left), recs[1], A.right)
        if t1 == R.RImp:
            return self.cut(self.cut(recs[0], P[0], A.left), recs[1], A.right)
        if t1 in (R.RAll, R.RAllC):
            a, t = d1.rule.eigen[0], d2.rule.terms[0]
            B = instantiate(A.body, t)
            return self.cut(rename_parameter(P[0], a, t, self.supply), recs[0], B)
        if t1 in (R.REx, R.RExC):
            t, a = d1.rule.terms[0], d2.rule.eigen[0]
            B = instantiate(A.body, t)
            return self.cut(P[0], rename_parameter(recs[0], a, t, self.supply), B)
        parts = _RIParts(self, d1)
        if t2 in _INSTANCE_FAMILY:
            return self._instance_case(parts, d2, recs)
        return self._identity_case(parts, d2, recs)

    def _instance_case(self, parts: "_RIParts", d2: ProofNode, recs: list[ProofNode]) -> ProofNode:
        """The left rule's eigen premise, instantiated at the right rule's witness."""
        b = d2.rule.eigen[-1]
        sh = shape(d2.rule)
        j = next(i for i, (ant, _) in enumerate(sh.premises) if b in params(ant))
        t = parts.t
        out = rename_parameter(recs[j], b, t, self.supply)
        for X in sh.premises[j][0]:
            out = self.cut(parts.proof_of(replace_term(X, b, t)), out, replace_term(X, b, t))
        return out

    def _identity_case(self, parts: "_RIParts", d2: ProofNode, recs: list[ProofNode]) -> ProofNode:
        """Derive ``t1=t2`` from uniqueness, then discharge the left rule's premises."""
        tag, ri = d2.tag, d2.rule
        sh = shape(ri)
        d = ri.main
        s1 = ri.terms[0]
        s2 = d.scope.right if tag in (R.LI4, R.LI4SI) else ri.terms[1]
        u1, pend1 = parts.uniq(s1)
        pending = Counter(pend1)
        if tag in (R.LI4, R.LI4SI):
            # the scope is x=s2, so the instance G_t reads t=s2
            g = parts.proof_of(parts.G_t)
            chain = self.cut(g, derived.trans_chain(s1, parts.t, s2), Eq(parts.t, s2))
            idp = self.cut(u1, chain, Eq(s1, parts.t))
        else:
            u2, pend2 = parts.uniq(s2)
            pending.update(pend2)
            both = self.cut(u1, derived.trans_common(s1, s2, parts.t), Eq(s1, parts.t))
            idp = self.cut(u2, both, Eq(s2, parts.t))
        if tag in (R.LI2SI, R.LI4SI):
            out = self.cut(idp, recs[-1], Eq(s1, s2))
            # the existence atoms stay: they are principal in the conclusion
            for f in (E(s1), E(s2)):
                pending[f] = 0
        else:
            B = ri.template
            out = self.cut(idp, derived.rewrite_back(s1, s2, B), Eq(s1, s2))
            pending[B(s2)] += 1
        for q, (_, suc) in zip(recs, sh.premises):
            if not suc:
                continue
            X = suc[0]
            if pending[X] > 0:
                pending[X] -= 1
                out = self.cut(q, out, X)
        return out


class _RIParts:
    """The premises of a right description step, lifted to its full context."""

    def __init__(self, red: Reducer, d1: ProofNode):
        self.red, self.node = red, d1
        ri = d1.rule
        self.d: Desc = ri.main
        self.t = ri.terms[0]
        self.a = ri.eigen[0]
        self.sh = shape(ri)
        s = d1.conclusion
        self.theta = s.ant
        self.lam = msub(s.suc, [self.d])
        self.F_t = instantiate(self.d.restrictor, self.t)
        self.G_t = instantiate(self.d.scope, self.t)

    def _lift(self, q: ProofNode, ant, suc) -> ProofNode:
        return adjust(q, Sequent(self.theta + tuple(ant), self.lam + tuple(suc)))

    def proof_of(self, X: Formula) -> ProofNode:
        P = self.node.premises
        if X == self.F_t:
            return self._lift(P[0], [], [X])
        if X == self.G_t:
            return self._lift(P[1], [], [X])
        if X == E(self.t):
            if self.node.tag in (R.RI, R.RIN):
                return self._lift(P[2], [], [X])
            if self.node.tag == R.RIS:
                return self._lift(ax(X), [], [X])
        raise PreconditionViolated(f"{self.node.tag} yields no proof of {show(X)}")

    def uniq(self, s: Term) -> tuple[ProofNode, list[Formula]]:
        """``acts(s), Theta => Lambda, s=t`` plus the list ``acts(s)``."""
        ant, suc = self.sh.premises[-1]
        q = rename_parameter(self.node.premises[-1], self.a, s, self.red.supply)
        acts = [replace_term(f, self.a, s) for f in ant]
        return self._lift(q, acts, [Eq(s, self.t)]), acts


def _smallest_calc(*proofs: ProofNode) -> Calc | None:
    tags = {n.tag for p in proofs for n in p}
    for c in Calc:
        if tags <= ADMITTED[c]:
            return c
    return None


def _check_bound(p: ProofNode, bound: int, where: str) -> None:
    bad = [d for d in cut_degrees(p) if d >= bound]
    if bad:
        raise DegreeViolation(f"{where}: output has a cut of degree {max(bad)} >= {bound}")


def _reducer_for(d1: ProofNode, d2: ProofNode, A: Formula, supply, trace, calc) -> Reducer:
    if supply is None:
        supply = FreshSupply(proof_params(d1) | proof_params(d2))
    return Reducer(degree(A), supply, trace, calc)


def left_reduce(d1: ProofNode, d2: ProofNode, A: Formula, k: int, *,
                supply: FreshSupply | None = None, trace: ReductionTrace | None = None,
                calc: Calc | None = None) -> ProofNode:
    """From ``G => D, A^k`` and ``A, T => L`` build ``G, T^k => D, L^k``."""
    red = _reducer_for(d1, d2, A, supply, trace, calc)
    _check_bound(d1, red.bound, "left_reduce input")
    _check_bound(d2, red.bound, "left_reduce input")
    out = red.left(d1, d2, A, k)
    _check_bound(out, red.bound, "left_reduce")
    return out


def right_reduce(d1: ProofNode, d2: ProofNode, A: Formula, k: int, *,
                supply: FreshSupply | None = None, trace: ReductionTrace | None = None,
                calc: Calc | None = None) -> ProofNode:
    """From ``T => L, A`` (A principal) and ``A^k, G => D`` build ``T^k, G => L^k, D``."""
    red = _reducer_for(d1, d2, A, supply, trace, calc)
    _check_bound(d1, red.bound, "right_reduce input")
    _check_bound(d2, red.bound, "right_reduce input")
    out = red.right(d1, d2, A, k)
    _check_bound(out, red.bound, "right_reduce")
    return out


def select_reducible_cut(p: ProofNode) -> Path | None:
    """Path of the first (preorder) maximal-degree cut with no such cut above it."""
    degs = cut_degrees(p)
    if not degs:
        return None
    top = max(degs)
    below: dict[int, bool] = {}
    for node in reversed(list(p)):
        hit = any(below[id(q)] or (q.tag == R.Cut and degree(q.rule.main) == top)
                  for q in node.premises)
        below[id(node)] = hit
    for path, node in p.walk():
        if node.tag == R.Cut and degree(node.rule.main) == top and not below[id(node)]:
            return path
    raise AssertionError("unreachable")


def eliminate_cuts(p: ProofNode, calc: Calc | None = None) -> tuple[ProofNode, ReductionTrace]:
    """Remove every cut from ``p``.

    ``calc`` validates the result and is the rule set for gap searches; when it
    is omitted the smallest calculus covering the proof is used.
    """
    trace = ReductionTrace()
    supply = FreshSupply(proof_params(p))
    end = p.conclusion
    while (path := select_reducible_cut(p)) is not None:
        node = p.at(path)
        A = node.rule.main
        before = measure(p)
        new = left_reduce(node.premises[0], node.premises[1], A, 1, supply=supply, trace=trace,
                          calc=calc)
        if new.conclusion != node.conclusion:
            raise AssertionError(f"reduction changed {node.conclusion} into {new.conclusion}")
        p = p.replace_at(path, new)
        after = measure(p)
        if not after < before:
            raise AssertionError(f"measure did not decrease: {before} -> {after}")
        trace.iterations.append(Iteration(path, show(A), degree(A), before, after))
    if p.conclusion != end:
        raise AssertionError("end sequent changed")
    if calc is not None:
        from .kernel import check_proof
        report = check_proof(p, calc)
        if not report.valid:
            raise AssertionError(f"reduction produced an invalid proof:\n{report}")
    return p, trace
