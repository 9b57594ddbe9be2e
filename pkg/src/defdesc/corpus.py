"""Worked derivations, built forward and checked by the kernel.

Every entry is parameterised over the atomic restrictor ``F := P(x)`` and
scope ``G := Q(x)``.  Derived rules (the biconditional rules and the
description rules obtained from the Russellian sequents) are proof
templates whose open premises are hypothesis leaves.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import derived as dv
from .calculus import Calc, Rule, Sequent, msub
from .kernel import ProofNode, adjust, aligned, ax, cut, hyp, infer, proof_params, weaken
from .syntax import (
    And, Desc, E, Eq, Exists, Forall, Formula, Imp, Param, Pred, Signature, Template, Term,
    Var, abstract, fresh_parameter, iff, params,
)

R = Rule

a, b, c, d = (Param(n) for n in "abcd")
F = Template(Pred("P", (Var(0),)))
G = Template(Pred("Q", (Var(0),)))
EX = Template(E(Var(0)))


@dataclass
class CorpusEntry:
    id: str
    calc: Calc
    proof: ProofNode
    source: str

    @property
    def end_sequent(self) -> Sequent:
        return self.proof.conclusion

    @property
    def hypotheses(self) -> list[Sequent]:
        return [n.conclusion for n in self.proof if n.tag == R.Hyp]


# -- formula builders -----------------------------------------------------------

def forall(p: Param, body: Formula, var: str = "x") -> Forall:
    return Forall(abstract(body, p), var)


def exists(p: Param, body: Formula, var: str = "x") -> Exists:
    return Exists(abstract(body, p), var)


def desc(f: Template, g: Template) -> Desc:
    return Desc(f.body, g.body)


_X, _Y = Param("_x"), Param("_y")


def uniquely(f: Template, t: Term) -> Formula:
    """``Ax(F <-> x=t)``."""
    return forall(_X, iff(f(_X), Eq(_X, t)))


def russell(f: Template, g: Template) -> Formula:
    """``Ey(Ax(F <-> x=y) & G_y)``."""
    return exists(_Y, And(uniquely(f, _Y), g(_Y)), "y")


def all_eq(f: Template, t: Term) -> Formula:
    """``Ay(F_y <-> t=y)``, the orientation of the negative-free analysis."""
    return forall(_Y, iff(f(_Y), Eq(t, _Y)), "y")


def russell_outer(f: Template, g: Template) -> Formula:
    """``Ex(Ay(F_y <-> x=y) & G_x)``."""
    return exists(_X, And(all_eq(f, _X), g(_X)))


# -- derived rules --------------------------------------------------------------

def r_iff(p1: ProofNode, p2: ProofNode, A: Formula, B: Formula) -> ProofNode:
    """From ``A, G => D, B`` and ``B, G => D, A`` infer ``G => D, A <-> B``."""
    i1 = infer(R.RImp, p1, main=Imp(A, B))
    i2 = infer(R.RImp, p2, main=Imp(B, A))
    return aligned(R.RAnd, i1, i2, main=iff(A, B))


def l_iff(p1: ProofNode, p2: ProofNode, A: Formula, B: Formula) -> ProofNode:
    """From ``G => D, A, B`` and ``A, B, G => D`` infer ``A <-> B, G => D``."""
    left = aligned(R.LImp, p1, ax(A), main=Imp(B, A))
    right = aligned(R.LImp, ax(B), p2, main=Imp(B, A))
    both = aligned(R.LImp, left, right, main=Imp(A, B))
    return infer(R.LAnd, both, main=iff(A, B))


def mp_left(A: Formula, B: Formula) -> ProofNode:
    """``A, A <-> B => B``."""
    p = aligned(R.LImp, ax(A), ax(B), main=Imp(A, B))
    return infer(R.LAnd, weaken(p, [Imp(B, A)]), main=iff(A, B))


def mp_right(A: Formula, B: Formula) -> ProofNode:
    """``A <-> B, B => A``."""
    p = aligned(R.LImp, ax(B), ax(A), main=Imp(B, A))
    return infer(R.LAnd, weaken(p, [Imp(A, B)]), main=iff(A, B))


def contract_all(p: ProofNode) -> ProofNode:
    """Drop duplicate formulas on both sides."""
    s = p.conclusion
    return adjust(p, Sequent(dict.fromkeys(s.ant), dict.fromkeys(s.suc)))


def l_all(p: ProofNode, A: Forall, t: Term) -> ProofNode:
    return infer(R.LAll, p, main=A, terms=(t,))


def r_ex(p: ProofNode, A: Exists, t: Term) -> ProofNode:
    return contract_all(infer(R.REx, p, main=A, terms=(t,)))


# -- the biconditional ----------------------------------------------------------

def _mp_entries() -> list[CorpusEntry]:
    A, B = F(a), G(a)
    pl, pr = hyp(Sequent([A], [B])), hyp(Sequent([B], [A]))
    ll, lr = hyp(Sequent([], [A, B])), hyp(Sequent([A, B], []))
    return [
        CorpusEntry("mp-bicond-left", Calc.GPFL, mp_left(A, B), "biconditional modus ponens, A first"),
        CorpusEntry("mp-bicond-right", Calc.GPFL, mp_right(A, B), "biconditional modus ponens, B first"),
        CorpusEntry("bicond-rules-derived", Calc.GPFL, r_iff(pl, pr, A, B),
                    "right biconditional rule from -> and &"),
        CorpusEntry("bicond-rules-derived-left", Calc.GPFL, l_iff(ll, lr, A, B),
                    "left biconditional rule from -> and &"),
    ]


# -- the Russellian sequents ----------------------------------------------------

def si1_from(g: Template = G, t: Term = b, e: Param = a) -> ProofNode:
    """The first Russellian sequent ``Ey(Ax(F <-> x=y) & G_y) => Ix[F, G]``, cut-free."""
    U = uniquely(F, t)
    first = dv.discharge_refl(l_all(mp_right(F(t), Eq(t, t)), U, t), t)
    uniq = l_all(mp_left(F(e), Eq(e, t)), U, e)
    ri = aligned(R.RI, first, ax(g(t)), ax(E(t)), uniq,
                 main=desc(F, g), terms=(t,), eigen=(e,))
    conj = infer(R.LAnd, ri, main=And(U, g(t)))
    if E(t) not in conj.conclusion.ant:       # G = E!x: the conjunct used it up
        conj = weaken(conj, [E(t)])
    return infer(R.LEx, conj, main=russell(F, g), eigen=(t,))


def ri_from_si1(g: Template = G, t: Term = c, e: Param = a, si1: ProofNode | None = None,
                premises: list[ProofNode] | None = None) -> ProofNode:
    """The right description rule, derived from the first Russellian sequent.

    ``premises`` default to the four hypothesis leaves over an empty context.
    """
    if premises is None:
        premises = [hyp(Sequent([], [F(t)])), hyp(Sequent([], [g(t)])),
                    hyp(Sequent([], [E(t)])), hyp(Sequent([E(e), F(e)], [Eq(e, t)]))]
    h1, h2, h3, h4 = premises
    if si1 is None:
        si1 = hyp(Sequent([russell(F, g)], [desc(F, g)]))
    gam, dlt = h1.conclusion.ant, h1.conclusion.suc[:-1]
    back = cut(h1, dv.rewrite_back(e, t, F), F(t))          # e=t, G => D, F_e
    fwd = h4                                                   # E!e, F_e, G => D, e=t
    both = r_iff(adjust(fwd, Sequent((F(e), E(e)) + gam, dlt + (Eq(e, t),))),
                 adjust(back, Sequent((Eq(e, t), E(e)) + gam, dlt + (F(e),))),
                 F(e), Eq(e, t))
    U = uniquely(F, t)
    allp = infer(R.RAll, both, main=U, eigen=(e,))
    conj = aligned(R.RAnd, allp, h2, main=And(U, g(t)))
    ex = infer(R.REx, conj, main=russell(F, g), terms=(t,))
    closed = adjust(cut(h3, ex, E(t)), Sequent(gam, dlt + (russell(F, g),)))
    return adjust(cut(closed, si1, russell(F, g)), Sequent(gam, dlt + (desc(F, g),)))


def _russell_to_some(g: Template, y: Param) -> ProofNode:
    """``Ey(Ax(F <-> x=y) & G_y) => Ex(F & G)``."""
    U = uniquely(F, y)
    fy = dv.discharge_refl(l_all(mp_right(F(y), Eq(y, y)), U, y), y)   # E!y, U => F_y
    both = aligned(R.RAnd, fy, ax(g(y)), main=And(F(y), g(y)))
    some = exists(_X, And(F(_X), g(_X)))
    ex = r_ex(both, some, y)
    conj = infer(R.LAnd, ex, main=And(U, g(y)))
    if E(y) not in conj.conclusion.ant:
        conj = weaken(conj, [E(y)])
    return infer(R.LEx, conj, main=russell(F, g), eigen=(y,))


def _some_from(h: ProofNode, g: Template, e: Param) -> ProofNode:
    """From ``F_e, G_e, E!e, G => D`` infer ``Ex(F & G), G => D``."""
    conj = infer(R.LAnd, h, main=And(F(e), g(e)))
    return infer(R.LEx, conj, main=exists(_X, And(F(_X), g(_X))), eigen=(e,))


def li1_from_si(t: Term = c) -> ProofNode:
    """The first left description rule from the two Russellian sequents."""
    h1 = hyp(Sequent([], [F(t)]))
    h2 = hyp(Sequent([], [E(t)]))
    h3 = hyp(Sequent([F(a), E(a)], [Eq(a, t)]))
    h4 = hyp(Sequent([F(b), G(b), E(b)], []))
    si1e = hyp(Sequent([russell(F, EX)], [desc(F, EX)]))
    si2 = hyp(Sequent([desc(F, G), desc(F, EX)], [russell(F, G)]))
    exist = ri_from_si1(EX, t, a, si1e, [h1, h2, h2, adjust(h3, Sequent([E(a), F(a)], [Eq(a, t)]))])
    r = cut(exist, si2, desc(F, EX))                               # Ix[F,G] => Russell
    r = cut(r, _russell_to_some(G, d), russell(F, G))
    r = cut(r, _some_from(h4, G, b), exists(_X, And(F(_X), G(_X))))
    return contract_all(r)


def li2p_from_si2(t1: Term = b, t2: Term = c) -> ProofNode:
    """``Ix[F, E!x], G => D, t1=t2`` from its four premises and the Russellian sequent."""
    U = uniquely(F, d)
    m1 = l_all(mp_left(F(t1), Eq(t1, d)), U, t1)                  # E!t1, U, F_t1 => t1=d
    m2 = l_all(mp_left(F(t2), Eq(t2, d)), U, t2)
    tr = cut(m2, cut(m1, dv.trans_common(t1, t2, d), Eq(t1, d)), Eq(t2, d))
    body = weaken(contract_all(tr), [E(d)])
    body = infer(R.LAnd, weaken(body, [E(d)]), main=And(U, E(d)))
    body = contract_all(infer(R.LEx, contract_all(weaken(body, [E(d)])),
                              main=russell(F, EX), eigen=(d,)))
    si2 = hyp(Sequent([desc(F, EX), desc(F, EX)], [russell(F, EX)]))
    r = contract_all(cut(si2, body, russell(F, EX)))
    for f in (F(t1), F(t2), E(t1), E(t2)):
        r = cut(hyp(Sequent([], [f])), r, f)
    return contract_all(r)


def li3_from_si2() -> ProofNode:
    """``Ix[F, E!x], G => D`` from ``F_a, E!a, G => D`` and the Russellian sequent."""
    h = hyp(Sequent([F(a), E(a)], []))
    si2 = hyp(Sequent([desc(F, EX), desc(F, EX)], [russell(F, EX)]))
    some = _some_from(weaken(h, [E(a)]), EX, a)
    r = cut(cut(si2, _russell_to_some(EX, d), russell(F, EX)), some,
            exists(_X, And(F(_X), E(_X))))
    return contract_all(r)


def pi(s: Term, t: Term) -> ProofNode:
    """``Ix[F, E!x], F_s, F_t, E!s, E!t => s=t`` by the second left rule."""
    return aligned(R.LI2, ax(F(s)), ax(F(t)), ax(E(s)), ax(E(t)), dv.reflexivity(t),
                   main=desc(F, EX), terms=(s, t), template=dv.eq_template(None, t))


def si2_from_rules() -> ProofNode:
    """The second Russellian sequent from the first three left rules, cut-free."""
    P_ab = pi(a, b)
    back = dv.rewrite_back(a, b, F)                                 # a=b, F_b => F_a
    ctx = msub(P_ab.conclusion.ant, [F(a)])
    back = adjust(back, Sequent((Eq(a, b),) + ctx, (F(a),)))
    fwd = P_ab
    sig = contract_all(r_iff(fwd, back, F(a), Eq(a, b)))
    U = uniquely(F, b)
    sig = infer(R.RAll, sig, main=U, eigen=(a,))
    sig = aligned(R.RAnd, sig, ax(G(b)), main=And(U, G(b)))
    sig = r_ex(sig, russell(F, G), b)                               # Sigma
    top = aligned(R.LI1, ax(F(c)), ax(E(c)), pi(a, c), sig,
                  main=desc(F, G), terms=(c,), eigen=(a, b))
    top = infer(R.LI3, top, main=desc(F, EX), eigen=(c,))
    return contract_all(top)


def bridge_forward() -> ProofNode:
    """``Ey Ix[F, x=y] => Ix[F, E!x]``."""
    at = lambda t: Template(Eq(Var(0), t))
    d_a = desc(F, at(a))
    li4 = aligned(R.LI4, ax(F(b)), ax(E(b)), ax(E(a)), dv.reflexivity(a),
                  main=d_a, terms=(b,), template=at(a))             # .. => b=a
    one = contract_all(cut(li4, dv.basic_rewrite(b, a, F), Eq(b, a)))
    one = contract_all(aligned(R.LI5, ax(E(a)), one, main=d_a, eigen=(b,)))   # Ix, E!a => F_a
    two = aligned(R.LI4, ax(F(c)), ax(E(c)), ax(E(a)), dv.reflexivity(a),
                  main=d_a, terms=(c,), template=at(a))             # .., F_c, E!c => c=a
    ri = aligned(R.RI, one, ax(E(a)), ax(E(a)), two, main=desc(F, EX), terms=(a,), eigen=(c,))
    ex_f = exists(_Y, desc(F, Template(Eq(Var(0), _Y))), "y")
    return infer(R.LEx, contract_all(ri), main=ex_f, eigen=(a,))


def bridge_backward() -> ProofNode:
    """``Ix[F, E!x] => Ey Ix[F, x=y]``."""
    at_a = Template(Eq(Var(0), a))
    ri = aligned(R.RI, ax(F(a)), dv.reflexivity(a), ax(E(a)), pi(b, a),
                 main=desc(F, at_a), terms=(a,), eigen=(b,))
    ex_f = exists(_Y, desc(F, Template(Eq(Var(0), _Y))), "y")
    ex = r_ex(ri, ex_f, a)
    return contract_all(infer(R.LI3, ex, main=desc(F, EX), eigen=(a,)))


def _refl_strict(t: Term) -> ProofNode:
    """``E!t => t=t``; the negative calculus has no bare reflexivity."""
    return infer(R.NEI, ax(Eq(t, t)), main=E(t))


def _russell_equiv(classical: bool) -> ProofNode:
    """``=> Ix[F,G] <-> Ex(Ay(F_y <-> x=y) & G_x)`` in the negative or classical calculus."""
    D, Rs = desc(F, G), russell_outer(F, G)
    U = all_eq(F, a)
    # Ix[F,G] => Russell
    tmpl = dv.eq_template(a, None)                                  # a = x
    if classical:
        uniq = aligned(R.LIC2, ax(F(b)), ax(F(a)), dv.reflexivity(a),
                       main=D, terms=(b, a), template=tmpl)
    else:
        uniq = aligned(R.LIN2, ax(E(b)), ax(E(a)), ax(F(b)), ax(F(a)), _refl_strict(a),
                       main=D, terms=(b, a), template=tmpl)
    ctx = msub(uniq.conclusion.ant, [F(b)])
    back = adjust(dv.basic_rewrite(a, b, F), Sequent((Eq(a, b),) + ctx, (F(b),)))
    bic = r_iff(uniq, back, F(b), Eq(a, b))
    if classical:
        allp = infer(R.RAllC, bic, main=U, eigen=(b,))
    else:
        allp = infer(R.RAll, weaken(bic, [E(b)]) if E(b) not in bic.conclusion.ant else bic,
                     main=U, eigen=(b,))
    conj = aligned(R.RAnd, allp, ax(G(a)), main=And(U, G(a)))
    if classical:
        ex = contract_all(infer(R.RExC, conj, main=Rs, terms=(a,)))
        fwd = contract_all(infer(R.LIC1, ex, main=D, eigen=(a,)))
    else:
        ex = r_ex(conj, Rs, a)
        fwd = contract_all(infer(R.LIN1, ex, main=D, eigen=(a,)))
    # Russell => Ix[F,G]
    la = (lambda p, t: infer(R.LAllC, p, main=U, terms=(t,))) if classical else \
        (lambda p, t: l_all(p, U, t))
    fa = la(mp_right(F(a), Eq(a, a)), a)                            # [E!a,] U, a=a => F_a
    if classical:
        fa = dv.discharge_refl(fa, a)
    else:
        fa = contract_all(infer(R.NEI, fa, main=E(a)))
    sym = dv.basic_rewrite(a, b, Template(Eq(Var(0), a)))            # a=b, a=a => b=a
    sym = dv.discharge_refl(sym, a) if classical else infer(R.NEI, sym, main=E(a))
    imp = aligned(R.LImp, ax(F(b)), sym, main=Imp(F(b), Eq(a, b)))
    mp = infer(R.LAnd, weaken(imp, [Imp(Eq(a, b), F(b))]), main=iff(F(b), Eq(a, b)))
    un = la(mp, b)
    if not classical:
        un = contract_all(infer(R.NEE, un, main=F(b), terms=(b,)))
    if classical:
        ri = aligned(R.RIC, fa, ax(G(a)), un, main=D, terms=(a,), eigen=(b,))
    else:
        ri = aligned(R.RIN, fa, ax(G(a)), ax(E(a)), un, main=D, terms=(a,), eigen=(b,))
    ri = contract_all(ri)
    conj = infer(R.LAnd, ri, main=And(U, G(a)))
    if classical:
        bwd = infer(R.LExC, conj, main=Rs, eigen=(a,))
    else:
        if E(a) not in conj.conclusion.ant:
            conj = weaken(conj, [E(a)])
        bwd = infer(R.LEx, conj, main=Rs, eigen=(a,))
    return r_iff(fwd, bwd, D, Rs)


# -- the table ------------------------------------------------------------------

_DERIVED = "exercise - derived"

_TEMPLATES = {
    "a.i": ("thm1-ai", ri_from_si1, "right description rule from the first Russellian sequent"),
    "b": ("thm1-b", li1_from_si, "first left description rule from both Russellian sequents"),
    "c": ("thm1-c", li2p_from_si2, f"identity form of the second left rule; {_DERIVED}"),
    "c.li3": ("thm1-c-li3", li3_from_si2, f"third left rule from the second Russellian sequent; "
                                          f"{_DERIVED}"),
}


def theorem1_rule_from_sequents(direction: str) -> CorpusEntry:
    """A description rule derived from Russellian sequents given as hypotheses.

    ``direction`` is one of ``a.i``, ``b``, ``c`` (the identity-concluding
    variant of the second left rule) and ``c.li3``.
    """
    try:
        ident, build, source = _TEMPLATES[direction]
    except KeyError:
        raise ValueError(f"unknown direction {direction!r}; expected one of {sorted(_TEMPLATES)}") \
            from None
    return CorpusEntry(ident, Calc.GPFL_EQ_I, build(), source)


DEFAULT_SIGNATURE = Signature(predicates={"P": 1, "Q": 1})


def build_corpus(sig: Signature | None = None) -> list[CorpusEntry]:
    sig = sig or DEFAULT_SIGNATURE
    for sym in ("P", "Q"):
        if sig.predicates.get(sym) != 1:
            raise ValueError(f"the corpus needs a unary predicate {sym}")
    out = _mp_entries()
    out.append(theorem1_rule_from_sequents("a.i"))
    out.append(CorpusEntry("thm1-aii", Calc.GPFL_EQ_I, si1_from(),
                           "first Russellian sequent from the right description rule"))
    out.append(theorem1_rule_from_sequents("b"))
    out.append(theorem1_rule_from_sequents("c"))
    out.append(theorem1_rule_from_sequents("c.li3"))
    out.append(CorpusEntry("thm1-d", Calc.GPFL_EQ_I, si2_from_rules(),
                           "second Russellian sequent from the left description rules"))
    out.append(CorpusEntry("exists-bridge-fwd", Calc.GPFL_EQ_I, bridge_forward(),
                           "something is identical to the F, hence the F exists"))
    out.append(CorpusEntry("exists-bridge-bwd", Calc.GPFL_EQ_I, bridge_backward(),
                           f"the F exists, hence something is identical to it; {_DERIVED}"))
    out.append(CorpusEntry("neg-russell-equiv", Calc.GNFL_EQ_I, _russell_equiv(False),
                           "Russellian analysis in negative free logic"))
    out.append(CorpusEntry("classical-russell-equiv", Calc.GC_EQ_I, _russell_equiv(True),
                           "Russellian analysis in classical logic"))
    for e in out:
        for f in e.end_sequent:
            sig.check(f)
    return out


def entry(ident: str) -> CorpusEntry:
    for e in build_corpus():
        if e.id == ident:
            return e
    raise KeyError(ident)


def close_hypotheses(p: ProofNode, X: Formula | None = None,
                     known: dict[Sequent, ProofNode] | None = None) -> ProofNode:
    """Instantiate the open contexts of a template with one formula ``X``.

    ``X`` is added to both sides of every sequent, which turns each
    hypothesis leaf into ``X => X`` followed by weakenings.  A fresh ``X``
    keeps every eigenvariable condition intact.  Hypotheses listed in
    ``known`` (say, the Russellian sequents) are replaced by those proofs.
    """
    known = known or {}
    if X is None:
        used = proof_params(p)
        for q in (known or {}).values():
            used |= proof_params(q)
        X = Pred("P", (fresh_parameter(used),))
    if params(X) & {e for n in p for e in n.rule.eigen}:
        raise ValueError(f"{X} clashes with an eigenvariable")

    def go(node: ProofNode) -> ProofNode:
        s = node.conclusion
        target = Sequent((X,) + s.ant, s.suc + (X,))
        if node.tag == R.Hyp:
            if s in known:
                return adjust(go(known[s]), target)
            return adjust(ax(X), target)
        if node.tag == R.Ax:
            return adjust(node, target)
        prems = [go(q) for q in node.premises]
        if node.tag == R.Cut:
            return adjust(cut(*prems, node.rule.main), target)
        return infer(node.rule, *prems)

    return go(p)
