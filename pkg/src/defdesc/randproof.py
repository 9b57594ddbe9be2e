"""Random valid proofs with cuts, for property tests of the reductions.

Proofs are assembled from cut-free pieces: eta-expanded identities ``A => A``,
small blocks around each description rule, and random forward applications
of parametric rules.  Pieces are joined by cuts on a formula they share, so
both principal and parametric reduction cases come up.  Everything is
re-checked by the kernel and filtered against the size limits.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .calculus import Calc, Rule, StepError
from .corpus import desc, exists, forall
from .kernel import ProofNode, aligned, ax, check_proof, cut, height, infer, weaken
from .syntax import (
    And, Desc, E, Eq, Exists, Forall, FreshSupply, Formula, Imp, Not, Or, Param, Pred,
    Template, Var, abstract, degree, instantiate, is_atomic, params, replace_term,
)

R = Rule
POOL = tuple(Param(n) for n in "abc")
CALC = Calc.GPFL_EQ_I

_RESTRICTORS = (Template(Pred("P", (Var(0),))), Template(Pred("Q", (Var(0),))))


@dataclass(frozen=True)
class Limits:
    max_degree: int = 3
    max_height: int = 12
    max_cuts: int = 3


def _formulas(p: ProofNode):
    for node in p:
        yield from node.conclusion


def max_formula_degree(p: ProofNode) -> int:
    return max(degree(f) for f in _formulas(p))


class Generator:
    def __init__(self, rng: random.Random, limits: Limits = Limits()):
        self.rng = rng
        self.limits = limits
        self.supply = FreshSupply(POOL)

    # -- formulas ---------------------------------------------------------------

    def term(self):
        return self.rng.choice(POOL)

    def atom(self, t=None) -> Formula:
        t = t if t is not None else self.term()
        k = self.rng.randrange(4)
        if k == 0:
            return Pred("P", (t,))
        if k == 1:
            return Pred("Q", (t,))
        if k == 2:
            return E(t)
        return Eq(t, self.term())

    def scope(self) -> Template:
        return self.rng.choice(_RESTRICTORS + (Template(E(Var(0))), Template(Eq(Var(0), self.term()))))

    def description(self) -> Desc:
        return desc(self.rng.choice(_RESTRICTORS), self.scope())

    def formula(self, deg: int) -> Formula:
        rng = self.rng
        if deg <= 0:
            return self.atom()
        k = rng.randrange(7)
        if k == 0:
            return Not(self.formula(deg - 1))
        if k in (1, 2, 3):
            left = rng.randint(0, deg - 1)
            cls = (And, Or, Imp)[k - 1]
            return cls(self.formula(left), self.formula(deg - 1 - left))
        if k in (4, 5):
            x = Param("_g")
            body = self.formula(deg - 1)
            if x not in params(body) and is_atomic(body):
                body = self.atom(x)
            build = forall if k == 4 else exists
            return build(x, _reach(body, x, self.term()), "x")
        return self.description()

    # -- cut-free pieces ---------------------------------------------------------

    def fresh(self, *avoid) -> Param:
        self.supply.reserve(params(list(avoid)))
        return self.supply()

    def eta(self, A: Formula) -> ProofNode:
        """A cut-free proof of ``A => A`` that decomposes ``A`` completely."""
        if is_atomic(A) or isinstance(A, Desc):
            return ax(A)
        if isinstance(A, Not):
            inner = infer(R.LNeg, self.eta(A.body), main=A)
            return infer(R.RNeg, inner, main=A)
        if isinstance(A, And):
            l = infer(R.LAnd, weaken(self.eta(A.left), [A.right]), main=A)
            r = infer(R.LAnd, weaken(self.eta(A.right), [A.left]), main=A)
            return aligned(R.RAnd, l, r, main=A)
        if isinstance(A, Or):
            l = infer(R.ROr, weaken(self.eta(A.left), right=[A.right]), main=A)
            r = infer(R.ROr, weaken(self.eta(A.right), right=[A.left]), main=A)
            return aligned(R.LOr, l, r, main=A)
        if isinstance(A, Imp):
            imp = aligned(R.LImp, self.eta(A.left), self.eta(A.right), main=A)
            return infer(R.RImp, imp, main=A)
        e = self.fresh(A)
        inst = self.eta(instantiate(A.body, e))
        if isinstance(A, Forall):
            return infer(R.RAll, infer(R.LAll, inst, main=A, terms=(e,)), main=A, eigen=(e,))
        return infer(R.LEx, infer(R.REx, inst, main=A, terms=(e,)),
                     main=A, eigen=(e,))

    def _uniqueness(self, f: Template, t, e: Param) -> ProofNode:
        """``E!e, Ax(F -> x=t), F_e => e=t``."""
        U = forall(Param("_u"), Imp(f(Param("_u")), Eq(Param("_u"), t)))
        imp = aligned(R.LImp, ax(f(e)), ax(Eq(e, t)), main=Imp(f(e), Eq(e, t)))
        return infer(R.LAll, imp, main=U, terms=(e,))

    def right_description(self, d: Desc, t=None) -> ProofNode:
        f, g = Template(d.restrictor), Template(d.scope)
        t = t if t is not None else self.term()
        e = self.fresh(d, t)
        return aligned(R.RI, ax(f(t)), ax(g(t)), ax(E(t)), self._uniqueness(f, t, e),
                       main=d, terms=(t,), eigen=(e,))

    def left_description(self, d: Desc, tag: str | None = None) -> ProofNode:
        """A left description block; ``tag`` fixes the rule, else it is drawn at random."""
        f, g = Template(d.restrictor), Template(d.scope)
        rng = self.rng
        options = ["LI1"]
        if d.scope == E(Var(0)):
            options += ["LI2", "LI3"]
        elif isinstance(d.scope, Eq) and d.scope.left == Var(0) and d.scope.right in POOL:
            options += ["LI4", "LI5"]
        if tag is None:
            tag = rng.choice(options)
        elif tag not in options:
            raise ValueError(f"{tag} does not apply to {d}")
        e = self.fresh(d)
        some_f = exists(Param("_s"), f(Param("_s")))
        if tag == "LI1":
            t = self.term()
            b = self.fresh(d, t, e)
            some_g = exists(Param("_s"), g(Param("_s")))
            last = weaken(infer(R.REx, ax(g(b)), main=some_g, terms=(b,)), [f(b)])
            if g(b) != E(b):
                last = weaken(last, [E(b)]) if E(b) not in last.conclusion.ant else last
            return aligned(R.LI1, ax(f(t)), ax(E(t)), self._uniqueness(f, t, e), last,
                           main=d, terms=(t,), eigen=(e, b))
        if tag in ("LI3", "LI5"):
            last = infer(R.REx, ax(f(e)), main=some_f, terms=(e,))
            if tag == "LI3":
                return infer(R.LI3, last, main=d, eigen=(e,))
            return aligned(R.LI5, ax(E(d.scope.right)), last, main=d, eigen=(e,))
        t1 = self.term()
        A = Template(rng.choice([Pred("P", (Var(0),)), Pred("Q", (Var(0),)),
                                 Eq(Var(0), self.term())]))
        if tag == "LI2":
            t2 = self.term()
            prem = [ax(f(t1)), ax(f(t2)), ax(E(t1)), ax(E(t2)), ax(A(t2))]
            return aligned(R.LI2, *prem, main=d, terms=(t1, t2), template=A)
        s = d.scope.right
        prem = [ax(f(t1)), ax(E(t1)), ax(E(s)), ax(A(s))]
        return aligned(R.LI4, *prem, main=d, terms=(t1,), template=A)

    # -- random forward steps ----------------------------------------------------

    def step(self, p: ProofNode) -> ProofNode | None:
        """One random parametric inference below ``p``, or None."""
        rng = self.rng
        s = p.conclusion
        ant, suc = list(dict.fromkeys(s.ant)), list(dict.fromkeys(s.suc))
        moves = ["LW", "RW"]
        if len(ant) >= 2:
            moves.append("LAnd")
        if len(suc) >= 2:
            moves.append("ROr")
        if ant and suc:
            moves.append("RImp")
        if ant:
            moves += ["RNeg", "EqI", "LQ"]
        if suc:
            moves += ["LNeg", "RQ"]
        if len(s.ant) > len(ant) or len(s.suc) > len(suc):
            moves.append("C")
        move = rng.choice(moves)
        try:
            if move == "LW":
                return weaken(p, [self.formula(rng.randint(0, 1))])
            if move == "RW":
                return weaken(p, right=[self.formula(rng.randint(0, 1))])
            if move == "C":
                dup = [f for f in ant if s.ant.count(f) > 1]
                if dup:
                    return infer(R.LC, p, main=dup[0])
                dup = [f for f in suc if s.suc.count(f) > 1]
                return infer(R.RC, p, main=dup[0])
            if move == "LAnd":
                x, y = rng.sample(ant, 2)
                return infer(R.LAnd, p, main=And(x, y))
            if move == "ROr":
                x, y = rng.sample(suc, 2)
                return infer(R.ROr, p, main=Or(x, y))
            if move == "RImp":
                return infer(R.RImp, p, main=Imp(rng.choice(ant), rng.choice(suc)))
            if move == "RNeg":
                return infer(R.RNeg, p, main=Not(rng.choice(ant)))
            if move == "LNeg":
                return infer(R.LNeg, p, main=Not(rng.choice(suc)))
            if move == "EqI":
                return self._eq_step(p, ant)
            return self._quantifier_step(p, ant if move == "LQ" else suc, move == "LQ")
        except (StepError, ValueError, IndexError):
            return None

    def _eq_step(self, p, ant):
        atoms_ = [f for f in ant if is_atomic(f)]
        if not atoms_:
            return None
        B = self.rng.choice(atoms_)
        ts = [t for t in POOL if t in params(B)]
        if not ts:
            return None
        s2 = self.rng.choice(ts)
        A = Template(abstract(B, s2))
        return infer(R.EqI, p, terms=(self.term(), s2), template=A)

    def _quantifier_step(self, p, side, left: bool):
        s = p.conclusion
        X = self.rng.choice(side)
        present = [f.arg for f in s.ant if isinstance(f, E) and f.arg in params(X)]
        if not present or (left and isinstance(X, E)):
            return None
        t = self.rng.choice(present)
        only_here = s.ant.count(E(t)) == 1 and \
            all(t not in params(f) for f in list(s.ant) + list(s.suc) if f not in (X, E(t)))
        if left:
            if only_here and self.rng.random() < 0.5:
                return infer(R.LEx, p, main=Exists(abstract(X, t)), eigen=(t,))
            return infer(R.LAll, p, main=Forall(abstract(X, t)), terms=(t,))
        if only_here and self.rng.random() < 0.5:
            return infer(R.RAll, p, main=Forall(abstract(X, t)), eigen=(t,))
        return infer(R.REx, p, main=Exists(abstract(X, t)), terms=(t,))

    def wander(self, p: ProofNode, n: int, keep: tuple = ()) -> ProofNode:
        """Up to ``n`` random steps that leave the formulas in ``keep`` in place."""
        for _ in range(n):
            q = self.step(p)
            if q is None or max(degree(f) for f in q.conclusion) > self.limits.max_degree:
                continue
            s = q.conclusion
            if all(f in s.ant for f, left in keep if left) and \
               all(f in s.suc for f, left in keep if not left):
                p = q
        return p

    # -- assembly --------------------------------------------------------------

    def piece(self) -> ProofNode:
        rng = self.rng
        k = rng.randrange(3)
        if k == 0:
            p = self.eta(self.formula(rng.randint(1, self.limits.max_degree)))
        elif k == 1:
            p = self.right_description(self.description())
        else:
            p = self.left_description(self.description())
        return self.wander(p, rng.randint(0, 3))

    def supplier(self, X: Formula, left: bool) -> ProofNode:
        """A cut-free proof with ``X`` in the antecedent (``left``) or succedent."""
        rng = self.rng
        if isinstance(X, Desc) and rng.random() < 0.8:
            p = self.left_description(X) if left else self.right_description(X)
        else:
            p = self.eta(X)
        return self.wander(p, rng.randint(0, 3), keep=((X, left),))

    def _pick(self, side) -> Formula:
        descs = [f for f in side if isinstance(f, Desc)]
        if descs and self.rng.random() < 0.6:
            return self.rng.choice(descs)
        return self.rng.choice(side)

    def candidate(self) -> ProofNode:
        rng = self.rng
        p = self.piece()
        for _ in range(rng.randint(1, self.limits.max_cuts)):
            s = p.conclusion
            downward = s.suc and (not s.ant or rng.random() < 0.5)
            if downward:
                X = self._pick(s.suc)
                p = cut(p, self.supplier(X, True), X)
            else:
                X = self._pick(s.ant)
                p = cut(self.supplier(X, False), p, X)
            p = self.wander(p, rng.randint(0, 2))
        return p

    def proof(self, attempts: int = 1000) -> ProofNode:
        lim = self.limits
        for _ in range(attempts):
            try:
                p = self.candidate()
            except (StepError, ValueError, IndexError):
                continue
            cuts = sum(1 for n in p if n.tag == R.Cut)
            if not 1 <= cuts <= lim.max_cuts or height(p) > lim.max_height:
                continue
            if max_formula_degree(p) > lim.max_degree:
                continue
            if check_proof(p, CALC).valid:
                return p
        raise RuntimeError("no proof within the limits; loosen them")


def _reach(body: Formula, x: Param, t) -> Formula:
    """Make sure the binder body mentions ``x`` by renaming one pool term."""
    if x in params(body):
        return body
    for p in POOL:
        if p in params(body):
            return replace_term(body, p, x)
    return And(body, E(x)) if degree(body) == 0 else body


def random_proofs(seed: int, n: int, limits: Limits = Limits()) -> list[ProofNode]:
    gen = Generator(random.Random(seed), limits)
    return [gen.proof() for _ in range(n)]
