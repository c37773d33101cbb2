"""CCTL* into MPL-shaped MSOL, and the semilattice logic into MTL.

Formulas are translated relative to a *view*: the current tree, given by an
optional set variable together with an anchor node.  A node ``z`` is in view
``(X, a)`` iff ``a <= z`` and, when ``X`` is given, ``z in X``.  Plain CCTL*
uses views without a set variable, so the current tree is the full subtree
below the anchor.
"""
from dataclasses import dataclass

from ..evaluators.config import PATH_DOMAINS
from ..models import FRONTIER
from ..syntax import msol as m
from ..syntax import temporal as tl
from ..syntax.msol import QuantKind, QuantMode
from .common import Run, TranslationError, TranslationOutput, graded
from .stdlib import child, nonblocking


_BOOL = {tl.And: m.And, tl.Or: m.Or, tl.Implies: m.Implies}


@dataclass(frozen=True)
class _View:
    setvar: str
    anchor: str

    def at(self, node):
        return _View(self.setvar, node)

    def holds(self, z):
        below = m.Leq(self.anchor, z)
        return below if self.setvar is None else m.And(m.Member(z, self.setvar), below)


class _Translator:
    def __init__(self, run, domain, relax, horizon):
        if domain not in PATH_DOMAINS:
            raise TranslationError(f"unknown path domain {domain!r}")
        self.run = run
        self.domain = domain
        self.relax = relax
        self.horizon = horizon

    # state formulas -----------------------------------------------------

    def state(self, f, view):
        x = view.anchor
        if isinstance(f, tl.TT):
            return m.TT()
        if isinstance(f, tl.FF):
            return m.FF()
        if isinstance(f, tl.Prop):
            return m.Atom(f.name, x)
        if isinstance(f, tl.Not):
            return m.Not(self.state(f.body, view))
        if isinstance(f, (tl.And, tl.Or, tl.Implies)):
            return _BOOL[type(f)](self.state(f.left, view), self.state(f.right, view))
        if isinstance(f, tl.E):
            return self.exists_path(f.body, view)
        if isinstance(f, tl.A):
            return m.Not(self.exists_path(tl.Not(f.body), view))
        if isinstance(f, tl.D):
            inside = None if view.setvar is None else (lambda y: m.Member(y, view.setvar))
            return graded(self.run, x, f.grade, lambda y: self.state(f.body, view.at(y)), inside)
        if isinstance(f, tl.SEMILATTICE):
            return self.lattice(f, view)
        raise TranslationError(f"path formula in state position: {f!r}")

    # paths ----------------------------------------------------------------

    def _path_end(self, pi, view):
        fr = self.run.fresh
        y, z = fr("y"), fr("z")
        if self.domain == "maximal":
            blocked = m.Exists(z, m.And(child(y, z, fr), view.holds(z)))
            extended = m.Exists(z, m.conj(m.Member(z, pi), child(y, z, fr)))
            return m.Forall(y, m.Implies(m.And(m.Member(y, pi), blocked), extended))
        if self.domain == "infinite-approx":
            last = m.Not(m.Exists(z, m.conj(m.Member(z, pi), m.Lt(y, z))))
            return m.Exists(y, m.conj(m.Member(y, pi), m.Atom(FRONTIER, y), last))
        return None

    def exists_path(self, body, view):
        x = view.anchor
        pi = self.run.new("P")
        y = self.run.fresh("y")
        parts = [m.Member(x, pi), m.Forall(y, m.Implies(m.Member(y, pi), m.Leq(x, y)))]
        if view.setvar is not None:
            z = self.run.fresh("z")
            parts.append(m.Forall(z, m.Implies(m.Member(z, pi), m.Member(z, view.setvar))))
        end = self._path_end(pi, view)
        if end is not None:
            parts.append(end)
        parts.append(self.path(body, pi, x, view))
        return m.SoExists(QuantKind.P, pi, m.conj(*parts))

    def path(self, f, pi, y, view):
        """``f`` at position ``y`` of the path ``pi``."""
        if tl.is_state(f):
            return self.state(f, view.at(y))
        fr = self.run.fresh
        if isinstance(f, tl.Not):
            return m.Not(self.path(f.body, pi, y, view))
        if isinstance(f, (tl.And, tl.Or, tl.Implies)):
            return _BOOL[type(f)](self.path(f.left, pi, y, view),
                                       self.path(f.right, pi, y, view))
        on = lambda z: m.And(m.Member(z, pi), m.Leq(y, z))  # noqa: E731
        if isinstance(f, tl.Next):
            z = fr("y")
            return m.Exists(z, m.conj(m.Member(z, pi), child(y, z, fr), self.path(f.body, pi, z, view)))
        if isinstance(f, tl.Eventually):
            z = fr("y")
            return m.Exists(z, m.And(on(z), self.path(f.body, pi, z, view)))
        if isinstance(f, tl.Globally):
            z = fr("y")
            return m.Forall(z, m.Implies(on(z), self.path(f.body, pi, z, view)))
        z, u = fr("y"), fr("y")
        before = m.conj(m.Member(u, pi), m.Leq(y, u), m.Lt(u, z))
        if isinstance(f, tl.Until):
            guard = m.Forall(u, m.Implies(before, self.path(f.left, pi, u, view)))
            return m.Exists(z, m.conj(on(z), self.path(f.right, pi, z, view), guard))
        if isinstance(f, tl.Release):
            rescue = m.Exists(u, m.And(before, self.path(f.left, pi, u, view)))
            return m.Forall(z, m.Implies(on(z), m.Or(self.path(f.right, pi, z, view), rescue)))
        raise TranslationError(f"unknown path operator: {f!r}")

    # semilattice operators ----------------------------------------------------------

    def _strict(self, small, big, chi):
        """``small`` is a strict subtree of ``big`` keeping, at every ``chi``
        node it holds, all of that node's ``big``-children."""
        fr = self.run.fresh
        z1, z2, z3, w = fr("z"), fr("z"), fr("z"), fr("w")
        inside = m.Forall(z1, m.Implies(small(z1), big(z1)))
        proper = m.Exists(z2, m.And(big(z2), m.Not(small(z2))))
        keeps = m.Forall(w, m.Implies(m.And(small(w), chi(w)),
                                      m.Forall(z3, m.Implies(m.And(child(w, z3, fr), big(z3)),
                                                             small(z3)))))
        return m.conj(inside, proper, keeps)

    def _candidate(self, s, x):
        """``s`` is a non-blocking subtree rooted at ``x``."""
        z = self.run.fresh("z")
        parts = [m.Member(x, s), m.Forall(z, m.Implies(m.Member(z, s), m.Leq(x, z)))]
        if not self.relax:
            parts.append(nonblocking(s, self.horizon, self.run.fresh))
        return m.conj(*parts)

    def lattice(self, f, view):
        x = view.anchor
        cur = view.holds
        chi = lambda w: self.state(f.chi, view.at(w))  # noqa: E731
        s, u = self.run.new("S"), self.run.new("S")
        in_s = lambda z: m.Member(z, s)  # noqa: E731
        in_u = lambda z: m.Member(z, u)  # noqa: E731
        right = self.state(f.right, _View(s, x))
        left = self.state(f.left, _View(u, x))
        down = isinstance(f, (tl.UU, tl.RR))
        if down:
            s_ok = self._strict(in_s, cur, chi)
            u_ok = m.And(self._strict(in_u, cur, chi), self._strict(in_s, in_u, chi))
        else:
            s_ok = self._strict(cur, in_s, chi)
            u_ok = m.And(self._strict(cur, in_u, chi), self._strict(in_u, in_s, chi))
        s_ok = m.And(self._candidate(s, x), s_ok)
        u_ok = m.And(self._candidate(u, x), u_ok)
        if isinstance(f, (tl.UU, tl.SS)):
            between = m.SoForall(QuantKind.T, u, m.Implies(u_ok, left))
            return m.SoExists(QuantKind.T, s, m.conj(s_ok, right, between))
        rescue = m.SoExists(QuantKind.T, u, m.And(u_ok, left))
        return m.SoForall(QuantKind.T, s, m.Implies(s_ok, m.Or(right, rescue)))


def _avoid(f, names):
    return set(tl.props(f)) | {n for n in names if n}


def cctl_to_mpl(f, x="x", domain="all"):
    """MPL formula in ``x`` for a CCTL* state formula; the output's only
    second-order quantifiers are existential path quantifiers.

    ``domain`` selects the path domain: ``all`` and ``finite`` give the same
    formula (read under full or weak quantification), ``maximal`` and
    ``infinite-approx`` add a condition on the last path node.
    """
    tl.check_sorts(f)
    if not tl.is_state(f):
        raise TranslationError("only state formulas can be translated")
    if tl.has_semilattice(f):
        raise TranslationError("semilattice operators need stl_to_mtl")
    run = Run(_avoid(f, (x,)))
    out = _Translator(run, domain, True, False).state(f, _View(None, x))
    mode = QuantMode.WEAK if domain == "finite" else QuantMode.FULL
    return TranslationOutput(out, x, run.issued, mode)


def stl_to_mtl(f, setvar=None, x="x", relax_nonblocking=False, horizon=False, domain="all"):
    """MTL formula for a semilattice formula evaluated on the subtree given
    by ``setvar`` (free) rooted at ``x``; without ``setvar`` the current tree
    is the full subtree below ``x``."""
    tl.check_sorts(f)
    if not tl.is_state(f):
        raise TranslationError("only state formulas can be translated")
    run = Run(_avoid(f, (x, setvar)))
    tr = _Translator(run, domain, relax_nonblocking, horizon)
    out = tr.state(f, _View(setvar, x))
    mode = QuantMode.WEAK if domain == "finite" else QuantMode.FULL
    return TranslationOutput(out, x, run.issued, mode)
