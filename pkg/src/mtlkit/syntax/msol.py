"""Monadic second-order formulas over trees.

One AST covers MSO, MTL and MPL: the logic is fixed by the kinds of the
second-order quantifiers used (``S`` sets, ``T`` subtrees, ``P`` paths).
Weak/co-weak readings are an evaluation parameter, see ``EvalConfig``.
"""
from dataclasses import dataclass
from enum import Enum

from ..names import Fresh


class QuantKind(str, Enum):
    S = "S"
    T = "T"
    P = "P"


class QuantMode(str, Enum):
    FULL = "full"
    WEAK = "weak"
    COWEAK = "coweak"


class Formula:
    __slots__ = ()

    def __str__(self):
        from ..concrete import show
        return show(self)

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __invert__(self):
        return Not(self)


@dataclass(frozen=True, repr=False)
class TT(Formula):
    def __repr__(self):
        return "TT()"


@dataclass(frozen=True, repr=False)
class FF(Formula):
    def __repr__(self):
        return "FF()"


@dataclass(frozen=True)
class Atom(Formula):
    prop: str
    var: str


@dataclass(frozen=True)
class Leq(Formula):
    left: str
    right: str


@dataclass(frozen=True)
class Lt(Formula):
    left: str
    right: str


@dataclass(frozen=True)
class Eq(Formula):
    left: str
    right: str


@dataclass(frozen=True)
class Member(Formula):
    var: str
    setvar: str


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
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class SoExists(Formula):
    kind: QuantKind
    var: str
    body: Formula


@dataclass(frozen=True)
class SoForall(Formula):
    kind: QuantKind
    var: str
    body: Formula


ATOMIC = (TT, FF, Atom, Leq, Lt, Eq, Member)
BINARY = (And, Or, Implies, Iff)
FO_QUANT = (Exists, Forall)
SO_QUANT = (SoExists, SoForall)


def conj(*fs):
    """Right-nested conjunction; ``tt`` when empty."""
    fs = [f for f in fs if not isinstance(f, TT)]
    if not fs:
        return TT()
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = And(f, out)
    return out


def disj(*fs):
    fs = [f for f in fs if not isinstance(f, FF)]
    if not fs:
        return FF()
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = Or(f, out)
    return out


def exists_many(vs, body):
    for v in reversed(vs):
        body = Exists(v, body)
    return body


def children(f):
    if isinstance(f, ATOMIC):
        return ()
    if isinstance(f, Not):
        return (f.body,)
    if isinstance(f, BINARY):
        return (f.left, f.right)
    return (f.body,)


def fo_names(f):
    """First-order variables referenced by an atomic formula."""
    if isinstance(f, Atom):
        return (f.var,)
    if isinstance(f, (Leq, Lt, Eq)):
        return (f.left, f.right)
    if isinstance(f, Member):
        return (f.var,)
    return ()


def free_vars(f):
    """Return ``(first-order, second-order)`` free variable sets."""
    if isinstance(f, ATOMIC):
        so = frozenset((f.setvar,)) if isinstance(f, Member) else frozenset()
        return frozenset(fo_names(f)), so
    if isinstance(f, FO_QUANT):
        fo, so = free_vars(f.body)
        return fo - {f.var}, so
    if isinstance(f, SO_QUANT):
        fo, so = free_vars(f.body)
        return fo, so - {f.var}
    fo, so = frozenset(), frozenset()
    for c in children(f):
        a, b = free_vars(c)
        fo, so = fo | a, so | b
    return fo, so


def all_names(f):
    names = set()
    stack = [f]
    while stack:
        g = stack.pop()
        names.update(fo_names(g))
        if isinstance(g, Member):
            names.add(g.setvar)
        if isinstance(g, FO_QUANT + SO_QUANT):
            names.add(g.var)
        stack.extend(children(g))
    return names


def size(f):
    return 1 + sum(size(c) for c in children(f))


def so_kinds(f):
    out = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, SO_QUANT):
            out.add(g.kind)
        stack.extend(children(g))
    return out


def rebuild(f, kids):
    if isinstance(f, Not):
        return Not(kids[0])
    if isinstance(f, BINARY):
        return type(f)(kids[0], kids[1])
    if isinstance(f, FO_QUANT):
        return type(f)(f.var, kids[0])
    if isinstance(f, SO_QUANT):
        return type(f)(f.kind, f.var, kids[0])
    return f


def desugar(f):
    """Rewrite into the core ``{tt, atom, <=, in, !, &, E, ES/ET/EP}``."""
    if isinstance(f, FF):
        return Not(TT())
    if isinstance(f, Lt):
        return And(Leq(f.left, f.right), Not(Leq(f.right, f.left)))
    if isinstance(f, Eq):
        return And(Leq(f.left, f.right), Leq(f.right, f.left))
    if isinstance(f, ATOMIC):
        return f
    if isinstance(f, Not):
        return Not(desugar(f.body))
    if isinstance(f, And):
        return And(desugar(f.left), desugar(f.right))
    if isinstance(f, Or):
        return Not(And(Not(desugar(f.left)), Not(desugar(f.right))))
    if isinstance(f, Implies):
        return Not(And(desugar(f.left), Not(desugar(f.right))))
    if isinstance(f, Iff):
        a, b = desugar(f.left), desugar(f.right)
        return And(Not(And(a, Not(b))), Not(And(b, Not(a))))
    if isinstance(f, Exists):
        return Exists(f.var, desugar(f.body))
    if isinstance(f, Forall):
        return Not(Exists(f.var, Not(desugar(f.body))))
    if isinstance(f, SoExists):
        return SoExists(f.kind, f.var, desugar(f.body))
    return Not(SoExists(f.kind, f.var, Not(desugar(f.body))))


def rename_free(f, fo_map=None, so_map=None):
    """Rename free variables; binders shadow as usual.

    Callers must ensure targets are not captured by binders in ``f``.
    """
    fo_map = dict(fo_map or {})
    so_map = dict(so_map or {})

    def go(g, fm, sm):
        if isinstance(g, Atom):
            return Atom(g.prop, fm.get(g.var, g.var))
        if isinstance(g, (Leq, Lt, Eq)):
            return type(g)(fm.get(g.left, g.left), fm.get(g.right, g.right))
        if isinstance(g, Member):
            return Member(fm.get(g.var, g.var), sm.get(g.setvar, g.setvar))
        if isinstance(g, ATOMIC):
            return g
        if isinstance(g, FO_QUANT) and g.var in fm:
            fm = {k: v for k, v in fm.items() if k != g.var}
        if isinstance(g, SO_QUANT) and g.var in sm:
            sm = {k: v for k, v in sm.items() if k != g.var}
        return rebuild(g, [go(c, fm, sm) for c in children(g)])

    return go(f, fo_map, so_map)


def rename_apart(f, fresh=None):
    """Give every binder a distinct name not clashing with any free variable."""
    fresh = fresh or Fresh(all_names(f))

    def go(g, fm, sm):
        if isinstance(g, ATOMIC):
            return rename_free(g, fm, sm)
        if isinstance(g, FO_QUANT):
            new = fresh(g.var)
            return type(g)(new, go(g.body, {**fm, g.var: new}, sm))
        if isinstance(g, SO_QUANT):
            new = fresh(g.var)
            return type(g)(g.kind, new, go(g.body, fm, {**sm, g.var: new}))
        return rebuild(g, [go(c, fm, sm) for c in children(g)])

    return go(f, {}, {})
