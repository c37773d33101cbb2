"""Counting CTL* and its semilattice extension.

State and path formulas share the Boolean constructors; the sort of a
formula follows from its temporal operators (see ``is_state``).
"""
from dataclasses import dataclass


class Formula:
    __slots__ = ()

    def __str__(self):
        from ..concrete import show
        return show(self)


@dataclass(frozen=True, repr=False)
class TT(Formula):
    def __repr__(self):
        return "TT()"


@dataclass(frozen=True, repr=False)
class FF(Formula):
    def __repr__(self):
        return "FF()"


@dataclass(frozen=True)
class Prop(Formula):
    name: str


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
class E(Formula):
    body: Formula


@dataclass(frozen=True)
class A(Formula):
    body: Formula


@dataclass(frozen=True)
class D(Formula):
    """At least ``grade`` children satisfy the state formula ``body``."""
    grade: int
    body: Formula


@dataclass(frozen=True)
class Next(Formula):
    body: Formula


@dataclass(frozen=True)
class Until(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Release(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Eventually(Formula):
    body: Formula


@dataclass(frozen=True)
class Globally(Formula):
    body: Formula


@dataclass(frozen=True)
class UU(Formula):
    chi: Formula
    left: Formula
    right: Formula


@dataclass(frozen=True)
class RR(Formula):
    chi: Formula
    left: Formula
    right: Formula


@dataclass(frozen=True)
class SS(Formula):
    chi: Formula
    left: Formula
    right: Formula


@dataclass(frozen=True)
class BB(Formula):
    chi: Formula
    left: Formula
    right: Formula


LEAVES = (TT, FF, Prop)
BOOL_BIN = (And, Or, Implies)
UNARY = (Not, E, A, Next, Eventually, Globally)
PATH_BIN = (Until, Release)
SEMILATTICE = (UU, RR, SS, BB)
PATH_OPS = (Next, Until, Release, Eventually, Globally)


class SortError(ValueError):
    pass


def children(f):
    if isinstance(f, LEAVES):
        return ()
    if isinstance(f, UNARY + (D,)):
        return (f.body,)
    if isinstance(f, SEMILATTICE):
        return (f.chi, f.left, f.right)
    return (f.left, f.right)


def rebuild(f, kids):
    if isinstance(f, LEAVES):
        return f
    if isinstance(f, D):
        return D(f.grade, kids[0])
    return type(f)(*kids)


def is_state(f):
    if isinstance(f, PATH_OPS):
        return False
    if isinstance(f, (Not,) + BOOL_BIN):
        return all(is_state(c) for c in children(f))
    return True


def check_sorts(f):
    """Raise ``SortError`` when a state position holds a path formula."""
    if isinstance(f, D) and not is_state(f.body):
        raise SortError("counting operator applied to a path formula")
    if isinstance(f, SEMILATTICE) and not all(is_state(c) for c in children(f)):
        raise SortError("semilattice operator applied to a path formula")
    for c in children(f):
        check_sorts(c)


def has_semilattice(f):
    return isinstance(f, SEMILATTICE) or any(has_semilattice(c) for c in children(f))


def props(f):
    out = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Prop):
            out.add(g.name)
        stack.extend(children(g))
    return out


def cctl_size(f):
    """Length with unary grades: every connective, atom and quantifier
    counts one and ``D{k} g`` counts ``k + 1 + size(g)``."""
    if isinstance(f, D):
        return f.grade + 1 + cctl_size(f.body)
    return 1 + sum(cctl_size(c) for c in children(f))


def is_balanced(f):
    if isinstance(f, Until):
        if cctl_size(f.left) != cctl_size(f.right):
            return False
    elif isinstance(f, Release):
        # a R b abbreviates !(!a U !b)
        if cctl_size(f.left) != cctl_size(f.right):
            return False
    elif isinstance(f, Eventually):
        # F g abbreviates tt U g
        if cctl_size(f.body) != 1:
            return False
    elif isinstance(f, (A, Globally)):
        # both hide a negated body under E / U
        return False
    elif isinstance(f, E):
        b = f.body
        if not isinstance(b, And) or cctl_size(b.left) != cctl_size(b.right):
            return False
    return all(is_balanced(c) for c in children(f))


def top_of_size(m):
    """A formula equivalent to ``tt`` of size exactly ``m >= 1``."""
    if m < 1:
        raise ValueError(m)
    if m == 1:
        return TT()
    if m == 2:
        return D(0, TT())
    return And(TT(), top_of_size(m - 2))


def _pad(left, right):
    sl, sr = cctl_size(left), cctl_size(right)
    if sl == sr:
        return left, right
    swap = sl > sr
    small, big = (right, left) if swap else (left, right)
    gap = abs(sl - sr)
    if gap >= 2:
        small = And(small, top_of_size(gap - 1))
    else:
        # a conjunction adds at least two, so grow both sides
        small = And(small, top_of_size(2))
        big = And(big, top_of_size(1))
    return (big, small) if swap else (small, big)


def balance(f):
    """Equivalent balanced formula built from tt, atoms, !, &, E, D, X, U."""
    if isinstance(f, (TT, Prop)):
        return f
    if isinstance(f, FF):
        return Not(TT())
    if isinstance(f, Not):
        return Not(balance(f.body))
    if isinstance(f, And):
        return And(balance(f.left), balance(f.right))
    if isinstance(f, Or):
        return Not(And(Not(balance(f.left)), Not(balance(f.right))))
    if isinstance(f, Implies):
        return Not(And(balance(f.left), Not(balance(f.right))))
    if isinstance(f, D):
        return D(f.grade, balance(f.body))
    if isinstance(f, Next):
        return Next(balance(f.body))
    if isinstance(f, Until):
        return Until(*_pad(balance(f.left), balance(f.right)))
    if isinstance(f, Eventually):
        return balance(Until(TT(), f.body))
    if isinstance(f, Globally):
        return Not(balance(Eventually(Not(f.body))))
    if isinstance(f, Release):
        return Not(balance(Until(Not(f.left), Not(f.right))))
    if isinstance(f, E):
        b = balance(f.body)
        if isinstance(b, And):
            return E(And(*_pad(b.left, b.right)))
        return E(And(b, top_of_size(cctl_size(b))))
    if isinstance(f, A):
        return Not(balance(E(Not(f.body))))
    return type(f)(balance(f.chi), balance(f.left), balance(f.right))
