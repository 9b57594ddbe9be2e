"""Proof scripts: an s-expression text format for signatures, sequents and proofs.

A script is a sequence of top-level forms::

    ; comments run to the end of the line
    (calculus GPFL_EQ_I)
    (signature (pred P 1) (fun f 1) (const c))
    (sequent goal (seq ((P a0)) ((P a0))))
    (proof goal (step Ax :principal ((P a0)) :concl (seq ((P a0)) ((P a0)))))

Terms are identifiers or ``(f t ...)``.  An identifier is a bound variable if
a binder in scope introduces it, a constant if the signature declares it, and
a parameter otherwise.  Predicate and function symbols must be declared.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .calculus import Calc, Rule, RuleInstance, Sequent
from .kernel import ProofNode
from .syntax import (
    And, Const, Desc, E, Eq, Exists, Forall, Formula, Func, Imp, Not, Or, Param, Pred,
    Signature, Template, Term, Var, atoms, iff, params, subterms, terms_of,
)


class ParseError(Exception):
    def __init__(self, line: int, col: int, message: str):
        super().__init__(f"{line}:{col}: {message}")
        self.line, self.col, self.message = line, col, message


class ArityError(ParseError):
    """A symbol applied to the wrong number of arguments."""


@dataclass
class ProofScript:
    calculus: Calc | None = None
    signature: Signature = field(default_factory=Signature)
    sequents: dict[str, Sequent] = field(default_factory=dict)
    proofs: dict[str, ProofNode] = field(default_factory=dict)

    def main_proof(self) -> tuple[str, ProofNode]:
        if not self.proofs:
            raise ValueError("script contains no proof")
        name = next(reversed(self.proofs))
        return name, self.proofs[name]


# -- reading ----------------------------------------------------------------------

@dataclass
class _Atom:
    text: str
    line: int
    col: int


@dataclass
class _List:
    items: list
    line: int
    col: int


_TOKEN = re.compile(r"\s+|;[^\n]*|\(|\)|[^\s();]+")


def _read(text: str) -> list:
    stack: list[_List] = [_List([], 1, 1)]
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        tok = m.group()
        col = pos - line_start + 1
        if tok == "(":
            stack.append(_List([], line, col))
        elif tok == ")":
            if len(stack) == 1:
                raise ParseError(line, col, "unbalanced ')'")
            done = stack.pop()
            stack[-1].items.append(done)
        elif not tok[0].isspace() and tok[0] != ";":
            stack[-1].items.append(_Atom(tok, line, col))
        nl = tok.count("\n")
        if nl:
            line += nl
            line_start = pos + tok.rindex("\n") + 1
        pos = m.end()
    if len(stack) > 1:
        open_ = stack[-1]
        raise ParseError(open_.line, open_.col, "unclosed '('")
    return stack[0].items


def _err(node, message: str, cls=ParseError):
    return cls(node.line, node.col, message)


def _atom(node, what: str) -> str:
    if not isinstance(node, _Atom):
        raise _err(node, f"expected {what}")
    return node.text


def _list(node, what: str) -> list:
    if not isinstance(node, _List):
        raise _err(node, f"expected {what}")
    return node.items


_CONNECTIVES = {"not": 1, "and": 2, "or": 2, "imp": 2, "iff": 2}


class _Reader:
    def __init__(self, sig: Signature):
        self.sig = sig

    def term(self, node, scope: tuple[str, ...]) -> Term:
        if isinstance(node, _Atom):
            name = node.text
            if name in scope:
                return Var(scope[::-1].index(name))      # innermost binder wins
            if name in self.sig.constants:
                return Const(name)
            if name in self.sig.functions or name in self.sig.predicates:
                raise _err(node, f"{name} is not a term")
            return Param(name)
        items = _list(node, "term")
        if not items:
            raise _err(node, "empty term")
        f = _atom(items[0], "function symbol")
        if f not in self.sig.functions:
            raise _err(items[0], f"unknown function symbol {f}")
        args = tuple(self.term(x, scope) for x in items[1:])
        if len(args) != self.sig.functions[f]:
            raise _err(node, f"{f} expects {self.sig.functions[f]} arguments, got {len(args)}",
                       ArityError)
        return Func(f, args)

    def formula(self, node, scope: tuple[str, ...] = ()) -> Formula:
        items = _list(node, "formula")
        if not items:
            raise _err(node, "empty formula")
        head = _atom(items[0], "formula head")
        args = items[1:]

        def need(n):
            if len(args) != n:
                raise _err(node, f"{head} takes {n} arguments, got {len(args)}", ArityError)

        if head == "=":
            need(2)
            return Eq(self.term(args[0], scope), self.term(args[1], scope))
        if head == "ex!":
            need(1)
            return E(self.term(args[0], scope))
        if head in _CONNECTIVES:
            need(_CONNECTIVES[head])
            subs = [self.formula(x, scope) for x in args]
            if head == "not":
                return Not(subs[0])
            return {"and": And, "or": Or, "imp": Imp, "iff": iff}[head](*subs)
        if head in ("forall", "exists"):
            need(2)
            v = self.binder(args[0])
            body = self.formula(args[1], scope + (v,))
            return (Forall if head == "forall" else Exists)(body, v)
        if head == "I":
            need(3)
            v = self.binder(args[0])
            inner = scope + (v,)
            return Desc(self.formula(args[1], inner), self.formula(args[2], inner), v)
        if head not in self.sig.predicates:
            raise _err(items[0], f"unknown predicate symbol {head}")
        n = self.sig.predicates[head]
        if len(args) != n:
            raise _err(node, f"{head} expects {n} arguments, got {len(args)}", ArityError)
        return Pred(head, tuple(self.term(x, scope) for x in args))

    def binder(self, node) -> str:
        v = _atom(node, "bound variable")
        if v in self.sig.constants or v in self.sig.functions or v in self.sig.predicates:
            raise _err(node, f"{v} is a signature symbol and cannot be bound")
        return v

    def sequent(self, node) -> Sequent:
        items = _list(node, "sequent")
        if len(items) != 3 or _atom(items[0], "'seq'") != "seq":
            raise _err(node, "a sequent is (seq (A ...) (B ...))")
        ant = [self.formula(x) for x in _list(items[1], "antecedent list")]
        suc = [self.formula(x) for x in _list(items[2], "succedent list")]
        return Sequent(ant, suc)

    def template(self, node) -> Template:
        items = _list(node, "template (x A)")
        if len(items) != 2:
            raise _err(node, "a template is (x A)")
        v = self.binder(items[0])
        return Template(self.formula(items[1], (v,)), v)

    def step(self, node) -> ProofNode:
        items = _list(node, "proof step")
        if len(items) < 2 or _atom(items[0], "'step'") != "step":
            raise _err(node, "a proof node is (step <rule> :key value ...)")
        rule_name = _atom(items[1], "rule name")
        try:
            tag = Rule(rule_name)
        except ValueError:
            raise _err(items[1], f"unknown rule {rule_name}") from None
        fields: dict[str, object] = {}
        rest = items[2:]
        if len(rest) % 2:
            raise _err(node, "keyword without a value")
        for key, val in zip(rest[::2], rest[1::2]):
            k = _atom(key, "keyword")
            if k in fields:
                raise _err(key, f"duplicate {k}")
            fields[k] = val
        unknown = set(fields) - {":principal", ":witness", ":eigen", ":template", ":premises", ":concl"}
        if unknown:
            raise _err(node, f"unknown keyword {sorted(unknown)[0]}")
        if ":concl" not in fields:
            raise _err(node, "missing :concl")
        main = None
        if ":principal" in fields:
            ps = _list(fields[":principal"], "principal list")
            if len(ps) > 1:
                raise _err(fields[":principal"], "at most one principal formula", ArityError)
            main = self.formula(ps[0]) if ps else None
        terms = tuple(self.term(x, ()) for x in _list(fields.get(":witness", _List([], 0, 0)), "witness list"))
        eigen = []
        for x in _list(fields.get(":eigen", _List([], 0, 0)), "eigenvariable list"):
            t = self.term(x, ())
            if not isinstance(t, Param):
                raise _err(x, "eigenvariables must be parameters")
            eigen.append(t)
        template = self.template(fields[":template"]) if ":template" in fields else None
        prems = tuple(self.step(x) for x in _list(fields.get(":premises", _List([], 0, 0)), "premise list"))
        concl = self.sequent(fields[":concl"])
        return ProofNode(concl, RuleInstance(tag, main, terms, tuple(eigen), template), prems)


def _read_signature(items: list, node) -> Signature:
    preds, funs, consts = {}, {}, set()
    for decl in items:
        parts = _list(decl, "declaration")
        kind = _atom(parts[0], "declaration kind") if parts else ""
        if kind in ("pred", "fun") and len(parts) == 3:
            name = _atom(parts[1], "symbol")
            n = _atom(parts[2], "arity")
            if not n.isdigit():
                raise _err(parts[2], "arity must be a natural number")
            (preds if kind == "pred" else funs)[name] = int(n)
        elif kind == "const" and len(parts) == 2:
            consts.add(_atom(parts[1], "symbol"))
        else:
            raise _err(decl, "declarations are (pred P n), (fun f n) or (const c)")
    try:
        return Signature(preds, funs, consts)
    except ValueError as exc:
        raise _err(node, str(exc)) from None


def parse_script(text: str) -> ProofScript:
    script = ProofScript()
    reader = _Reader(script.signature)
    for form in _read(text):
        items = _list(form, "top-level form")
        head = _atom(items[0], "form name") if items else ""
        if head == "calculus" and len(items) == 2:
            name = _atom(items[1], "calculus name")
            try:
                script.calculus = Calc(name)
            except ValueError:
                raise _err(items[1], f"unknown calculus {name}") from None
        elif head == "signature":
            script.signature = _read_signature(items[1:], form)
            reader = _Reader(script.signature)
        elif head in ("sequent", "proof") and len(items) == 3:
            name = _atom(items[1], "name")
            table = script.sequents if head == "sequent" else script.proofs
            if name in table:
                raise _err(items[1], f"{head} {name} defined twice")
            table[name] = reader.sequent(items[2]) if head == "sequent" else reader.step(items[2])
        else:
            raise _err(form, "expected (calculus C), (signature ...), (sequent name S) or (proof name P)")
    return script


def parse_signature(text: str) -> Signature:
    """Declarations such as ``(pred P 1) (fun f 2)`` outside a script."""
    return _read_signature(_read(text), _List([], 1, 1))


def parse_sequent(text: str, sig: Signature) -> Sequent:
    forms = _read(text)
    if len(forms) != 1:
        raise ParseError(1, 1, "expected exactly one sequent")
    return _Reader(sig).sequent(forms[0])


def parse_formula(text: str, sig: Signature) -> Formula:
    forms = _read(text)
    if len(forms) != 1:
        raise ParseError(1, 1, "expected exactly one formula")
    return _Reader(sig).formula(forms[0])


# -- printing ---------------------------------------------------------------------

class _Printer:
    def __init__(self, taken: set[str]):
        self.taken = taken       # free identifiers a binder must not capture

    def term(self, t: Term, names: tuple[str, ...]) -> str:
        if isinstance(t, Var):
            return names[-1 - t.index]
        if isinstance(t, Func):
            return "(" + " ".join([t.symbol] + [self.term(s, names) for s in t.args]) + ")"
        return t.name

    def bind(self, var: str, names: tuple[str, ...]) -> str:
        v, i = var, 0
        while v in names or v in self.taken:
            i += 1
            v = f"{var}{i}"
        return v

    def formula(self, f: Formula, names: tuple[str, ...] = ()) -> str:
        t = lambda s: self.term(s, names)
        if isinstance(f, Pred):
            return "(" + " ".join([f.symbol] + [t(s) for s in f.args]) + ")"
        if isinstance(f, Eq):
            return f"(= {t(f.left)} {t(f.right)})"
        if isinstance(f, E):
            return f"(ex! {t(f.arg)})"
        if isinstance(f, Not):
            return f"(not {self.formula(f.body, names)})"
        if isinstance(f, (And, Or, Imp)):
            op = {And: "and", Or: "or", Imp: "imp"}[type(f)]
            return f"({op} {self.formula(f.left, names)} {self.formula(f.right, names)})"
        if isinstance(f, (Forall, Exists)):
            v = self.bind(f.var, names)
            q = "forall" if isinstance(f, Forall) else "exists"
            return f"({q} {v} {self.formula(f.body, names + (v,))})"
        if isinstance(f, Desc):
            v = self.bind(f.var, names)
            inner = names + (v,)
            return f"(I {v} {self.formula(f.restrictor, inner)} {self.formula(f.scope, inner)})"
        raise TypeError(f"not a formula: {f!r}")

    def sequent(self, s: Sequent) -> str:
        ant = " ".join(self.formula(f) for f in s.ant)
        suc = " ".join(self.formula(f) for f in s.suc)
        return f"(seq ({ant}) ({suc}))"

    def step(self, p: ProofNode, indent: int = 0) -> str:
        pad = " " * indent
        ri = p.rule
        head = f"{pad}(step {ri.tag.value}"
        parts = []
        if ri.main is not None:
            parts.append(f":principal ({self.formula(ri.main)})")
        if ri.terms:
            parts.append(":witness (" + " ".join(self.term(t, ()) for t in ri.terms) + ")")
        if ri.eigen:
            parts.append(":eigen (" + " ".join(a.name for a in ri.eigen) + ")")
        if ri.template is not None:
            v = self.bind(ri.template.var, ())
            parts.append(f":template ({v} {self.formula(ri.template.body, (v,))})")
        parts.append(f":concl {self.sequent(p.conclusion)}")
        text = head + " " + " ".join(parts)
        if p.premises:
            inner = "\n".join(self.step(q, indent + 2) for q in p.premises)
            text += f"\n{pad} :premises (\n{inner})"
        return text + ")"


def _free_names(objs, sig: Signature) -> set[str]:
    names = {p.name for p in params(objs)}
    return names | set(sig.constants)


def _proof_objects(p: ProofNode) -> list:
    out = []
    for node in p:
        out.extend(node.conclusion)
        ri = node.rule
        out.extend(f for f in (ri.main,) if f is not None)
        out.extend(ri.terms)
        out.extend(ri.eigen)
        if ri.template is not None:
            out.append(ri.template)
    return out


def print_formula(f: Formula, sig: Signature = Signature()) -> str:
    return _Printer(_free_names([f], sig)).formula(f)


def print_sequent(s: Sequent, sig: Signature = Signature()) -> str:
    return _Printer(_free_names(list(s), sig)).sequent(s)


def print_script(script: ProofScript) -> str:
    sig = script.signature
    objs: list = [f for s in script.sequents.values() for f in s]
    for p in script.proofs.values():
        objs.extend(_proof_objects(p))
    pr = _Printer(_free_names(objs, sig))
    lines = []
    if script.calculus is not None:
        lines.append(f"(calculus {script.calculus.value})")
    decls = [f"(pred {k} {n})" for k, n in sorted(sig.predicates.items())]
    decls += [f"(fun {k} {n})" for k, n in sorted(sig.functions.items())]
    decls += [f"(const {c})" for c in sorted(sig.constants)]
    lines.append("(signature" + "".join(" " + d for d in decls) + ")")
    for name, s in script.sequents.items():
        lines.append(f"(sequent {name} {pr.sequent(s)})")
    for name, p in script.proofs.items():
        lines.append(f"(proof {name}\n{pr.step(p, 1)})")
    return "\n".join(lines) + "\n"


def signature_of(objs) -> Signature:
    """Smallest signature declaring every symbol that occurs in ``objs``."""
    preds, funs, consts = {}, {}, set()
    for obj in objs:
        if isinstance(obj, Sequent):
            for f in obj:
                _collect(f, preds, funs, consts)
        else:
            _collect(obj, preds, funs, consts)
    return Signature(preds, funs, consts)


def _collect(obj, preds, funs, consts):
    if isinstance(obj, Param):
        return
    for t in terms_of(obj):
        for s in subterms(t):
            if isinstance(s, Func):
                funs[s.symbol] = len(s.args)
            elif isinstance(s, Const):
                consts.add(s.name)
    if isinstance(obj, Term):
        return
    for a in atoms(obj):
        if isinstance(a, Pred):
            preds[a.symbol] = len(a.args)


def script_for(name: str, proof: ProofNode, calc: Calc | None,
               sig: Signature | None = None) -> ProofScript:
    """Wrap one proof in a script whose signature covers everything it uses."""
    found = signature_of(_proof_objects(proof))
    if sig is not None:
        found = Signature({**found.predicates, **sig.predicates},
                          {**found.functions, **sig.functions},
                          found.constants | sig.constants)
    return ProofScript(calc, found, {name: proof.conclusion}, {name: proof})
