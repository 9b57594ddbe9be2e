"""Proof trees, whole-proof validation and forward construction helpers."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .calculus import (
    ADMITTED, Calc, ContextMismatch, Rule, RuleInstance, Sequent, StepError, check_step,
    infer_conclusion, msub, shape,
)
from .syntax import Formula, Param, degree, params, show

R = Rule
Path = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class ProofNode:
    conclusion: Sequent
    rule: RuleInstance
    premises: tuple["ProofNode", ...] = ()

    @property
    def tag(self) -> Rule:
        return self.rule.tag

    def __iter__(self) -> Iterator["ProofNode"]:
        """Preorder traversal."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.premises))

    def walk(self, path: Path = ()) -> Iterator[tuple[Path, "ProofNode"]]:
        yield path, self
        for i, p in enumerate(self.premises):
            yield from p.walk(path + (i,))

    def at(self, path: Path) -> "ProofNode":
        node = self
        for i in path:
            node = node.premises[i]
        return node

    def replace_at(self, path: Path, new: "ProofNode") -> "ProofNode":
        if not path:
            return new
        i, rest = path[0], path[1:]
        prems = list(self.premises)
        prems[i] = prems[i].replace_at(rest, new)
        return ProofNode(self.conclusion, self.rule, tuple(prems))

    def same_tree(self, other: "ProofNode") -> bool:
        return (self.conclusion == other.conclusion and self.rule == other.rule
                and len(self.premises) == len(other.premises)
                and all(a.same_tree(b) for a, b in zip(self.premises, other.premises)))

    def __repr__(self):
        return f"<{self.tag} {self.conclusion}>"


def show_path(path: Path) -> str:
    return "root" if not path else "root." + ".".join(str(i) for i in path)


@dataclass
class ProofReport:
    valid: bool
    height: int
    cut_count: int
    max_cut_degree: int
    errors: list[tuple[Path, StepError]] = field(default_factory=list)
    hypotheses: list[tuple[Path, Sequent]] = field(default_factory=list)

    @property
    def closed(self) -> bool:
        """Valid and free of open assumptions."""
        return self.valid and not self.hypotheses

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "closed": self.closed,
            "height": self.height,
            "cut_count": self.cut_count,
            "max_cut_degree": self.max_cut_degree,
            "errors": [{"path": show_path(p), "kind": e.kind, "message": e.message}
                       for p, e in self.errors],
            "hypotheses": [{"path": show_path(p), "sequent": str(s)} for p, s in self.hypotheses],
        }

    def __str__(self):
        lines = [f"valid: {self.valid}", f"height: {self.height}",
                 f"cuts: {self.cut_count} (max degree {self.max_cut_degree})"]
        if self.hypotheses:
            lines.append(f"open hypotheses: {len(self.hypotheses)}")
            lines += [f"  {show_path(p)}: {s}" for p, s in self.hypotheses]
        lines += [f"  {show_path(p)}: {e}" for p, e in self.errors]
        return "\n".join(lines)


def height(p: ProofNode) -> int:
    # iterative to survive deep contraction chains
    best = {}
    for path, node in sorted(p.walk(), key=lambda pn: -len(pn[0])):
        best[path] = 1 + max((best[path + (i,)] for i in range(len(node.premises))), default=0)
    return best[()]


def cut_degrees(p: ProofNode) -> list[int]:
    return [degree(n.rule.main) for n in p if n.tag == R.Cut]


def check_proof(p: ProofNode, calc: Calc) -> ProofReport:
    errors: list[tuple[Path, StepError]] = []
    hyps: list[tuple[Path, Sequent]] = []
    for path, node in p.walk():
        if node.tag == R.Hyp:
            hyps.append((path, node.conclusion))
        try:
            check_step(node.conclusion, node.rule, [q.conclusion for q in node.premises], calc)
        except StepError as exc:
            errors.append((path, exc))
    degs = cut_degrees(p)
    return ProofReport(valid=not errors, height=height(p), cut_count=len(degs),
                       max_cut_degree=max(degs, default=0), errors=errors, hypotheses=hyps)


def proof_params(p: ProofNode) -> set[Param]:
    out: set[Param] = set()
    for node in p:
        out |= params(node.conclusion)
        out |= set(node.rule.eigen)
    return out


# -- forward construction -----------------------------------------------------

def ax(A: Formula) -> ProofNode:
    return ProofNode(Sequent([A], [A]), RuleInstance(R.Ax, A))


def hyp(s: Sequent) -> ProofNode:
    return ProofNode(s, RuleInstance(R.Hyp))


def _check_any(conclusion, rule, premises):
    """Check a step against the first calculus that admits its rule."""
    for c, rules in ADMITTED.items():
        if rule.tag in rules or rule.tag == R.Hyp:
            return check_step(conclusion, rule, premises, c)
    return check_step(conclusion, rule, premises, Calc.GPFL)


def _relaxed_infer(rule, premises):
    concl = infer_conclusion(rule, [q.conclusion for q in premises])
    node = ProofNode(concl, rule, tuple(premises))
    _check_any(node.conclusion, rule, [q.conclusion for q in premises])
    return node


def infer(rule: RuleInstance | Rule, *premises: ProofNode, **meta) -> ProofNode:
    """Apply ``rule`` to premises whose contexts already agree."""
    if isinstance(rule, Rule):
        rule = RuleInstance(rule, **meta)
    return _relaxed_infer(rule, premises)


def weaken(p: ProofNode, left: Iterable[Formula] = (), right: Iterable[Formula] = ()) -> ProofNode:
    for A in left:
        p = ProofNode(Sequent((A,) + p.conclusion.ant, p.conclusion.suc), RuleInstance(R.LW, A), (p,))
    for A in right:
        p = ProofNode(Sequent(p.conclusion.ant, p.conclusion.suc + (A,)), RuleInstance(R.RW, A), (p,))
    return p


def _contract_once(p: ProofNode, A: Formula, left: bool) -> ProofNode:
    s = p.conclusion
    if left:
        new = Sequent(msub(s.ant, [A]), s.suc)
        return ProofNode(new, RuleInstance(R.LC, A), (p,))
    new = Sequent(s.ant, msub(s.suc, [A]))
    return ProofNode(new, RuleInstance(R.RC, A), (p,))


def adjust(p: ProofNode, target: Sequent) -> ProofNode:
    """Contract and weaken ``p`` until it proves exactly ``target``.

    Antecedent contractions come first, then succedent ones, each in order of
    first occurrence, then weakenings; the output tree is deterministic.
    Every formula of ``p``'s conclusion must occur in ``target``.
    """
    s = p.conclusion
    have_l, have_r = Counter(s.ant), Counter(s.suc)
    want_l, want_r = Counter(target.ant), Counter(target.suc)
    for have, want, side in ((have_l, want_l, "antecedent"), (have_r, want_r, "succedent")):
        for f, n in have.items():
            if n and not want[f]:
                raise ContextMismatch(f"cannot remove {show(f)} from the {side} of {s}")
    for f in dict.fromkeys(s.ant):
        for _ in range(have_l[f] - want_l[f]):
            p = _contract_once(p, f, True)
    for f in dict.fromkeys(s.suc):
        for _ in range(have_r[f] - want_r[f]):
            p = _contract_once(p, f, False)
    add_l = [f for f in dict.fromkeys(target.ant) for _ in range(want_l[f] - have_l[f])]
    add_r = [f for f in dict.fromkeys(target.suc) for _ in range(want_r[f] - have_r[f])]
    return weaken(p, add_l, add_r)


def cut(p1: ProofNode, p2: ProofNode, A: Formula) -> ProofNode:
    return infer(RuleInstance(R.Cut, A), p1, p2)


def aligned(rule: RuleInstance | Rule, *premises: ProofNode, **meta) -> ProofNode:
    """Apply a context-sharing rule after weakening every premise to a common context.

    The common context is the multiset union (pointwise maximum) of what each
    premise has beyond its active formulas.  This is the double line of the
    textbook displays, spelled out as single weakening steps.
    """
    if isinstance(rule, Rule):
        rule = RuleInstance(rule, **meta)
    sh = shape(rule)
    ctx_l: Counter = Counter()
    ctx_r: Counter = Counter()
    rests = []
    for i, q in enumerate(premises):
        ant, suc = sh.premises[i]
        s = q.conclusion
        rest_l, rest_r = Counter(s.ant), Counter(s.suc)
        rest_l.subtract(Counter(ant))
        rest_r.subtract(Counter(suc))
        rests.append((rest_l, rest_r))
        for f, n in rest_l.items():
            ctx_l[f] = max(ctx_l[f], n)
        for f, n in rest_r.items():
            ctx_r[f] = max(ctx_r[f], n)
    order_l = list(dict.fromkeys(f for q in premises for f in q.conclusion.ant))
    order_r = list(dict.fromkeys(f for q in premises for f in q.conclusion.suc))
    ctx = Sequent([f for f in order_l for _ in range(max(ctx_l[f], 0))],
                  [f for f in order_r for _ in range(max(ctx_r[f], 0))])
    fitted = [adjust(q, sh.premise(ctx, i)) for i, q in enumerate(premises)]
    return infer(rule, *fitted)
