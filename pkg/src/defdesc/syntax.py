"""Terms, formulas and the operations the rule checker needs on them.

Bound variables are de Bruijn indices (``Var``); binder names are kept only
for printing and never take part in equality, so alpha-equivalent formulas
compare and hash equal.  Parameters are globally named free variables.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Union


# -- terms ------------------------------------------------------------------

class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Param(Term):
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Const(Term):
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Func(Term):
    symbol: str
    args: tuple[Term, ...]

    def __str__(self) -> str:
        return f"{self.symbol}({', '.join(map(str, self.args))})"


@dataclass(frozen=True)
class Var(Term):
    """Reference to the binder ``index`` levels up (0 = innermost)."""
    index: int

    def __str__(self) -> str:
        return f"#{self.index}"


# -- formulas ---------------------------------------------------------------

class Formula:
    __slots__ = ()

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class Pred(Formula):
    symbol: str
    args: tuple[Term, ...]


@dataclass(frozen=True)
class Eq(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class E(Formula):
    """The existence predicate: ``E!t``."""
    arg: Term


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Forall(Formula):
    body: Formula
    var: str = field(default="x", compare=False)


@dataclass(frozen=True)
class Exists(Formula):
    body: Formula
    var: str = field(default="x", compare=False)


@dataclass(frozen=True)
class Desc(Formula):
    """The binary description quantifier ``Ix[F, G]``: the F is G."""
    restrictor: Formula
    scope: Formula
    var: str = field(default="x", compare=False)


ATOMS = (Pred, Eq, E)
BINARY = (And, Or, Imp)
BINDERS = (Forall, Exists)


def iff(a: Formula, b: Formula) -> Formula:
    """Biconditional as (a -> b) & (b -> a); there is no primitive."""
    return And(Imp(a, b), Imp(b, a))


def is_atomic(f: Formula) -> bool:
    return isinstance(f, ATOMS)


@dataclass(frozen=True)
class Template:
    """A formula with one hole, the ``A`` of ``A_t^x``.  The hole is ``Var(0)``."""
    body: Formula
    var: str = field(default="x", compare=False)

    def __call__(self, t: Term) -> Formula:
        return instantiate(self.body, t)


Obj = Union[Term, Formula, Template]


# -- substitution -----------------------------------------------------------

def _map_terms(f: Formula, fn, depth: int = 0) -> Formula:
    """Rebuild ``f`` applying ``fn(term, depth)`` to every top-level term."""
    if isinstance(f, Pred):
        return Pred(f.symbol, tuple(fn(t, depth) for t in f.args))
    if isinstance(f, Eq):
        return Eq(fn(f.left, depth), fn(f.right, depth))
    if isinstance(f, E):
        return E(fn(f.arg, depth))
    if isinstance(f, Not):
        return Not(_map_terms(f.body, fn, depth))
    if isinstance(f, BINARY):
        return type(f)(_map_terms(f.left, fn, depth), _map_terms(f.right, fn, depth))
    if isinstance(f, BINDERS):
        return type(f)(_map_terms(f.body, fn, depth + 1), f.var)
    if isinstance(f, Desc):
        return Desc(_map_terms(f.restrictor, fn, depth + 1),
                    _map_terms(f.scope, fn, depth + 1), f.var)
    raise TypeError(f"not a formula: {f!r}")


def _term_map(t: Term, leaf) -> Term:
    if isinstance(t, Func):
        return Func(t.symbol, tuple(_term_map(s, leaf) for s in t.args))
    return leaf(t)


def instantiate(body: Formula, t: Term) -> Formula:
    """Open a binder body: replace the dangling ``Var(0)`` by closed ``t``."""
    def fn(term, depth):
        def leaf(s):
            if isinstance(s, Var):
                if s.index == depth:
                    return t
                if s.index > depth:
                    return Var(s.index - 1)
            return s
        return _term_map(term, leaf)
    return _map_terms(body, fn)


def substitute(f: Formula | Template, t: Term) -> Formula:
    """``A_t^x``: fill the hole (``Var(0)``) of an open body or template with ``t``.

    A closed formula has no hole and comes back unchanged.
    """
    if isinstance(f, Template):
        return f(t)
    return instantiate(f, t)


def abstract(f: Formula, p: Param) -> Formula:
    """Turn every occurrence of ``p`` into the hole of a binder body."""
    def fn(term, depth):
        return _term_map(term, lambda s: Var(depth) if s == p else s)
    return _map_terms(f, fn)


def replace_term(obj, old: Term, new: Term):
    """Replace every occurrence of the closed term ``old`` by ``new``."""
    def leaf_fix(term):
        if term == old:
            return new
        if isinstance(term, Func):
            return Func(term.symbol, tuple(leaf_fix(s) for s in term.args))
        return term
    if isinstance(obj, Term):
        return leaf_fix(obj)
    if isinstance(obj, Template):
        return Template(replace_term(obj.body, old, new), obj.var)
    return _map_terms(obj, lambda term, depth: leaf_fix(term))


# -- inspection -------------------------------------------------------------

def terms_of(obj) -> Iterable[Term]:
    """Top-level terms of a formula/template/term, before descending into args."""
    if isinstance(obj, Term):
        yield obj
    elif isinstance(obj, Template):
        yield from terms_of(obj.body)
    elif isinstance(obj, Pred):
        yield from obj.args
    elif isinstance(obj, Eq):
        yield obj.left
        yield obj.right
    elif isinstance(obj, E):
        yield obj.arg
    elif isinstance(obj, Not):
        yield from terms_of(obj.body)
    elif isinstance(obj, BINARY):
        yield from terms_of(obj.left)
        yield from terms_of(obj.right)
    elif isinstance(obj, BINDERS):
        yield from terms_of(obj.body)
    elif isinstance(obj, Desc):
        yield from terms_of(obj.restrictor)
        yield from terms_of(obj.scope)
    else:
        raise TypeError(f"cannot inspect {obj!r}")


def subterms(t: Term) -> Iterable[Term]:
    yield t
    if isinstance(t, Func):
        for s in t.args:
            yield from subterms(s)


def closed_subterms(obj) -> list[Term]:
    """Subterms free of bound references, in first-occurrence order."""
    seen: dict[Term, None] = {}
    for t in terms_of(obj):
        for s in subterms(t):
            if not has_var(s):
                seen.setdefault(s)
    return list(seen)


def has_var(t: Term) -> bool:
    return any(isinstance(s, Var) for s in subterms(t))


def params(obj) -> set[Param]:
    """Parameters occurring in a term, formula, template, sequent or iterable."""
    if isinstance(obj, (Term, Formula, Template)):
        return {s for t in terms_of(obj) for s in subterms(t) if isinstance(s, Param)}
    out: set[Param] = set()
    for item in obj:
        out |= params(item)
    return out


def occurs_parameter(p: Param, obj) -> bool:
    return p in params(obj)


def degree(f: Formula) -> int:
    """Number of connectives; atoms (including ``E!t``) have degree 0."""
    if is_atomic(f):
        return 0
    if isinstance(f, Not):
        return 1 + degree(f.body)
    if isinstance(f, BINARY):
        return 1 + degree(f.left) + degree(f.right)
    if isinstance(f, BINDERS):
        return 1 + degree(f.body)
    if isinstance(f, Desc):
        return 1 + degree(f.restrictor) + degree(f.scope)
    raise TypeError(f"not a formula: {f!r}")


_PARAM_RE = re.compile(r"^a(\d+)$")


def fresh_parameter(avoid: Iterable[Param]) -> Param:
    """Lowest ``a<i>`` not in ``avoid``."""
    taken = {p.name for p in avoid}
    for i in itertools.count():
        if f"a{i}" not in taken:
            return Param(f"a{i}")
    raise AssertionError("unreachable")


class FreshSupply:
    """Deterministic stream of fresh parameters that never repeats itself."""

    def __init__(self, avoid: Iterable[Param] = ()):
        self.taken = {p.name for p in avoid}
        self._next = 0

    def reserve(self, more: Iterable[Param]) -> None:
        self.taken.update(p.name for p in more)

    def __call__(self) -> Param:
        while f"a{self._next}" in self.taken:
            self._next += 1
        name = f"a{self._next}"
        self.taken.add(name)
        return Param(name)


# -- printing ---------------------------------------------------------------

def show_term(t: Term, names: tuple[str, ...] = ()) -> str:
    if isinstance(t, Var):
        return names[-1 - t.index] if t.index < len(names) else f"#{t.index}"
    if isinstance(t, Func):
        return f"{t.symbol}({', '.join(show_term(s, names) for s in t.args)})"
    return t.name


def _binder_name(var: str, names: tuple[str, ...]) -> str:
    if var not in names:
        return var
    for i in itertools.count(1):
        cand = f"{var}{i}"
        if cand not in names:
            return cand
    raise AssertionError("unreachable")


def show(f: Formula, names: tuple[str, ...] = (), top: bool = True) -> str:
    """Readable infix rendering; binder names are disambiguated on shadowing."""
    st = lambda t: show_term(t, names)
    if isinstance(f, Pred):
        return f"{f.symbol}({', '.join(map(st, f.args))})" if f.args else f.symbol
    if isinstance(f, Eq):
        return f"{st(f.left)}={st(f.right)}"
    if isinstance(f, E):
        return f"E!{st(f.arg)}"
    if isinstance(f, Not):
        return f"~{show(f.body, names, False)}"
    if isinstance(f, BINARY):
        op = {And: " & ", Or: " | ", Imp: " -> "}[type(f)]
        s = show(f.left, names, False) + op + show(f.right, names, False)
        return s if top else f"({s})"
    if isinstance(f, BINDERS):
        v = _binder_name(f.var, names)
        q = "A" if isinstance(f, Forall) else "E"
        return f"{q}{v}.{show(f.body, names + (v,), False)}"
    if isinstance(f, Desc):
        v = _binder_name(f.var, names)
        inner = names + (v,)
        return f"I{v}[{show(f.restrictor, inner)}, {show(f.scope, inner)}]"
    raise TypeError(f"not a formula: {f!r}")


# -- signatures -------------------------------------------------------------

@dataclass
class Signature:
    predicates: dict[str, int] = field(default_factory=dict)
    functions: dict[str, int] = field(default_factory=dict)
    constants: set[str] = field(default_factory=set)

    def __post_init__(self):
        clash = (set(self.predicates) & set(self.functions)) | \
                (set(self.functions) & self.constants) | (set(self.predicates) & self.constants)
        if clash:
            raise ValueError(f"symbol declared twice: {sorted(clash)}")

    def check(self, obj) -> None:
        """Raise ``ValueError`` on an undeclared symbol or an arity mismatch."""
        for t in terms_of(obj):
            for s in subterms(t):
                if isinstance(s, Func):
                    n = self.functions.get(s.symbol)
                    if n is None:
                        raise ValueError(f"undeclared function {s.symbol}")
                    if n != len(s.args):
                        raise ValueError(f"{s.symbol} expects {n} arguments, got {len(s.args)}")
                elif isinstance(s, Const) and s.name not in self.constants:
                    raise ValueError(f"undeclared constant {s.name}")
        for atom in atoms(obj):
            if isinstance(atom, Pred):
                n = self.predicates.get(atom.symbol)
                if n is None:
                    raise ValueError(f"undeclared predicate {atom.symbol}")
                if n != len(atom.args):
                    raise ValueError(f"{atom.symbol} expects {n} arguments, got {len(atom.args)}")


def atoms(obj) -> Iterable[Formula]:
    if isinstance(obj, Template):
        obj = obj.body
    if isinstance(obj, Term):
        return
    if is_atomic(obj):
        yield obj
    elif isinstance(obj, Not):
        yield from atoms(obj.body)
    elif isinstance(obj, BINARY):
        yield from atoms(obj.left)
        yield from atoms(obj.right)
    elif isinstance(obj, BINDERS):
        yield from atoms(obj.body)
    elif isinstance(obj, Desc):
        yield from atoms(obj.restrictor)
        yield from atoms(obj.scope)
