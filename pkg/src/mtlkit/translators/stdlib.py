"""Named MSOL predicates and sample sentences.

Every constructor takes variable names and returns a formula whose bound
variables avoid those names.
"""
from dataclasses import dataclass

from ..concrete import parse
from ..models import FRONTIER
from ..names import Fresh
from ..syntax.msol import (And, Atom, Eq, Exists, Forall, Iff, Implies, Leq, Lt, Member, Not,
                           Or, QuantKind, SoExists, SoForall, conj)


def _fresh(args, fresh):
    if fresh is None:
        return Fresh(args)
    fresh.reserve(args)
    return fresh


def some_in(v, setvar, body):
    """``E v. (v in X & body)``."""
    return Exists(v, And(Member(v, setvar), body))


def all_in(v, setvar, body):
    """``A v. (v in X -> body)``."""
    return Forall(v, Implies(Member(v, setvar), body))


def child(x, y, fresh=None):
    z = _fresh((x, y), fresh)("z")
    return And(Lt(x, y), Not(Exists(z, And(Lt(x, z), Lt(z, y)))))


def subseteq(a, b, fresh=None):
    z = _fresh((a, b), fresh)("z")
    return Forall(z, Implies(Member(z, a), Member(z, b)))


def path(setvar, fresh=None):
    fr = _fresh((setvar,), fresh)
    x, y, z = fr("x"), fr("y"), fr("z")
    convex = Implies(And(Lt(x, y), Not(child(x, y, fr))),
                     some_in(z, setvar, And(Lt(x, z), Lt(z, y))))
    return all_in(x, setvar, all_in(y, setvar, And(Or(Leq(x, y), Leq(y, x)), convex)))


def path_f(setvar, fresh=None):
    """A path with a last node."""
    fr = _fresh((setvar,), fresh)
    x, y = fr("x"), fr("y")
    return And(path(setvar, fr), some_in(x, setvar, all_in(y, setvar, Leq(y, x))))


def path_inf(setvar, fresh=None):
    """A non-empty path without a last node."""
    fr = _fresh((setvar,), fresh)
    x, y, w = fr("x"), fr("y"), fr("w")
    return conj(path(setvar, fr), Exists(w, Member(w, setvar)),
                all_in(x, setvar, some_in(y, setvar, Lt(x, y))))


def tree(setvar, fresh=None):
    fr = _fresh((setvar,), fresh)
    x, y, z = fr("x"), fr("y"), fr("z")
    rooted = some_in(x, setvar, all_in(y, setvar, Leq(x, y)))
    closed = all_in(x, setvar, all_in(y, setvar,
                                      Forall(z, Implies(And(Leq(x, z), Leq(z, y)),
                                                        Member(z, setvar)))))
    return And(rooted, closed)


def fin_mso(setvar, fresh=None):
    fr = _fresh((setvar,), fresh)
    y, z = fr("Y"), fr("Z")
    no_inf = Not(SoExists(QuantKind.S, z, And(subseteq(z, y, fr), path_inf(z, fr))))
    return SoExists(QuantKind.S, y, conj(tree(y, fr), subseteq(setvar, y, fr), no_inf))


def fin_mtl_subtree(setvar, fresh=None):
    fr = _fresh((setvar,), fresh)
    y = fr("Y")
    return Not(SoExists(QuantKind.T, y, And(subseteq(y, setvar, fr), path_inf(y, fr))))


def nonblocking(setvar, horizon=False, fresh=None):
    """Every member has a child inside; with ``horizon`` frontier nodes are exempt."""
    fr = _fresh((setvar,), fresh)
    x, y = fr("x"), fr("y")
    has_child = some_in(y, setvar, child(x, y, fr))
    if horizon:
        has_child = Or(Atom(FRONTIER, x), has_child)
    return all_in(x, setvar, has_child)


def maxsubtree(y, x_set, v, fresh=None):
    """Forces ``y`` to be the maximal connected part of ``x_set`` rooted at ``v``."""
    fr = _fresh((y, x_set, v), fresh)
    u, z = fr("u"), fr("z")
    gap_free = Forall(z, Implies(And(Leq(v, z), Lt(z, u)), Member(z, x_set)))
    return conj(subseteq(y, x_set, fr), Member(v, y),
                Forall(u, Iff(Member(u, y), conj(Member(u, x_set), Leq(v, u), gap_free))))


def density_mtl(fresh=None):
    fr = _fresh((), fresh)
    s, x, x1, x2 = fr("X"), fr("x"), fr("x"), fr("x")
    split = conj(Lt(x, x1), Lt(x, x2), Not(Leq(x1, x2)), Not(Leq(x2, x1)))
    return SoExists(QuantKind.T, s, all_in(x, s, some_in(x1, s, some_in(x2, s, split))))


def inf_branching_wmtl(fresh=None):
    fr = _fresh((), fresh)
    x, s, y = fr("x"), fr("X"), fr("y")
    return Not(Forall(x, SoExists(QuantKind.T, s,
                                  Forall(y, Implies(child(x, y, fr), Member(y, s))))))


def finitely_branching_cowmso(setvar, fresh=None):
    fr = _fresh((setvar,), fresh)
    x, s, y = fr("x"), fr("X"), fr("y")
    fan = conj(subseteq(s, setvar, fr), Member(x, s),
               all_in(y, s, Or(Eq(y, x), child(x, y, fr))))
    return Not(Exists(x, SoExists(QuantKind.S, s, fan)))


def theta_cow(x, setvar, fresh=None):
    fr = _fresh((x, setvar), fresh)
    y, yy, z, p, w = fr("y"), fr("Y"), fr("z"), fr("Y"), fr("y")
    fan = And(subseteq(yy, setvar, fr), all_in(z, yy, Or(Eq(z, y), child(y, z, fr))))
    no_fan = Not(some_in(y, setvar, SoExists(QuantKind.T, yy, fan)))
    below = SoForall(QuantKind.T, p, Implies(And(path(p, fr), subseteq(p, setvar, fr)),
                                             some_in(w, p, Lt(x, w))))
    return conj(Member(x, setvar), no_fan, below)


def a_acceptance_wmtl(fresh=None):
    """Some finite prefix of the tree has a-labelled leaves and keeps every
    child of its inner nodes."""
    fr = _fresh((), fresh)
    s, r, y, z, z2, q = fr("X"), fr("r"), fr("y"), fr("z"), fr("z"), fr("q")
    has_root = some_in(r, s, Forall(q, Leq(r, q)))
    inner = some_in(z, s, child(y, z, fr))
    leaves_a = all_in(y, s, Implies(Not(inner), Atom("a", y)))
    closed = all_in(y, s, Implies(inner, Forall(z2, Implies(child(y, z2, fr), Member(z2, s)))))
    return SoExists(QuantKind.T, s, conj(has_root, leaves_a, closed))


def phi_den_gmc():
    return parse("nu X. mu Y. (<2> X) | (<1> Y)", "gmc")


def af_a_gmc():
    return parse("mu X. a | [1] X", "gmc")


@dataclass(frozen=True)
class _Entry:
    build: object
    arity: int


STDLIB = {
    "child": _Entry(child, 2),
    "path": _Entry(path, 1),
    "path_f": _Entry(path_f, 1),
    "path_inf": _Entry(path_inf, 1),
    "tree": _Entry(tree, 1),
    "subseteq": _Entry(subseteq, 2),
    "fin_mso": _Entry(fin_mso, 1),
    "fin_mtl_subtree": _Entry(fin_mtl_subtree, 1),
    "nonblocking": _Entry(nonblocking, 1),
    "maxsubtree": _Entry(maxsubtree, 3),
    "density_mtl": _Entry(density_mtl, 0),
    "inf_branching_wmtl": _Entry(inf_branching_wmtl, 0),
    "finitely_branching_cowmso": _Entry(finitely_branching_cowmso, 1),
    "theta_cow": _Entry(theta_cow, 2),
    "a_acceptance_wmtl": _Entry(a_acceptance_wmtl, 0),
    "phi_den_gmc": _Entry(phi_den_gmc, 0),
    "af_a_gmc": _Entry(af_a_gmc, 0),
}


def stdlib(name, *args):
    try:
        entry = STDLIB[name]
    except KeyError:
        raise KeyError(f"unknown predicate {name!r}") from None
    if len(args) != entry.arity:
        raise TypeError(f"{name} takes {entry.arity} arguments, got {len(args)}")
    return entry.build(*args)
