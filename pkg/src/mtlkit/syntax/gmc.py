"""Graded mu-calculus formulas and the syntactic operations on them.

Identifiers starting with an upper-case letter are fixpoint variables;
lower-case identifiers are atomic propositions.
"""
from dataclasses import dataclass

from ..names import Fresh


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
class Var(Formula):
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
class Diamond(Formula):
    """At least ``grade`` children satisfy ``body``."""
    grade: int
    body: Formula


@dataclass(frozen=True)
class Box(Formula):
    """Fewer than ``grade`` children falsify ``body``."""
    grade: int
    body: Formula


@dataclass(frozen=True)
class Mu(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Nu(Formula):
    var: str
    body: Formula


LEAVES = (TT, FF, Prop, Var)
MODAL = (Diamond, Box)
FIX = (Mu, Nu)


def children(f):
    if isinstance(f, LEAVES):
        return ()
    if isinstance(f, (And, Or)):
        return (f.left, f.right)
    return (f.body,)


def rebuild(f, kids):
    if isinstance(f, (And, Or)):
        return type(f)(kids[0], kids[1])
    if isinstance(f, Not):
        return Not(kids[0])
    if isinstance(f, MODAL):
        return type(f)(f.grade, kids[0])
    if isinstance(f, FIX):
        return type(f)(f.var, kids[0])
    return f


def free_vars(f):
    if isinstance(f, Var):
        return frozenset((f.name,))
    if isinstance(f, FIX):
        return free_vars(f.body) - {f.var}
    out = frozenset()
    for c in children(f):
        out |= free_vars(c)
    return out


def all_names(f):
    out = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Var):
            out.add(g.name)
        elif isinstance(g, FIX):
            out.add(g.var)
        stack.extend(children(g))
    return out


def props(f):
    out = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Prop):
            out.add(g.name)
        stack.extend(children(g))
    return out


def size(f):
    return 1 + sum(size(c) for c in children(f))


def conj(*fs):
    if not fs:
        return TT()
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = And(f, out)
    return out


def disj(*fs):
    if not fs:
        return FF()
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = Or(f, out)
    return out


@dataclass(frozen=True)
class Verdict:
    """Outcome of the one-step fragment check.

    ``kind`` is ``"theta"`` for fixpoint-headed members, ``"phi"`` for base
    formulas and ``"reject"`` otherwise; ``path`` indexes the offending
    subformula by child positions.
    """
    kind: str
    reason: str = ""
    path: tuple = ()

    @property
    def ok(self):
        return self.kind != "reject"


def _one_step_theta(f, zero, one, neg, pol, path):
    if isinstance(f, FIX):
        v = f.var
        return _one_step_theta(f.body, zero | {v}, one | {v}, neg, {**pol, v: neg},
                               path + (0,))
    return _one_step_phi(f, zero, one, neg, pol, path)


def _one_step_phi(f, zero, one, neg, pol, path):
    # ``pol`` records the negation parity at each variable's binder
    if isinstance(f, (TT, FF, Prop)):
        return None
    if isinstance(f, Var):
        if f.name not in zero:
            return (f"variable {f.name} not usable here", path)
        if neg != pol.get(f.name, False):
            return (f"variable {f.name} occurs negatively", path)
        return None
    if isinstance(f, Not):
        return _one_step_phi(f.body, zero, one, not neg, pol, path + (0,))
    if isinstance(f, (And, Or)):
        return (_one_step_phi(f.left, zero, one, neg, pol, path + (0,))
                or _one_step_phi(f.right, zero, one, neg, pol, path + (1,)))
    if isinstance(f, MODAL):
        return _one_step_phi(f.body, one, frozenset(), neg, pol, path + (0,))
    # a fixpoint in base position must be closed
    return _one_step_theta(f, frozenset(), frozenset(), neg, pol, path)


def check_one_step(f, zero=(), one=()):
    """Classify ``f`` against the one-step grammar with roles ``(zero, one)``."""
    zero, one = frozenset(zero), frozenset(one)
    if isinstance(f, FIX):
        err = _one_step_theta(f, zero, one, False, {}, ())
        return Verdict("theta") if err is None else Verdict("reject", *err)
    err = _one_step_phi(f, zero, one, False, {}, ())
    return Verdict("phi") if err is None else Verdict("reject", *err)


def is_pnf(f):
    if isinstance(f, Not):
        return isinstance(f.body, (Prop, Var))
    return all(is_pnf(c) for c in children(f))


def check_alternation_free(f):
    """True iff no fixpoint subformula has a free variable bound by an
    enclosing fixpoint of the opposite polarity."""
    if not is_pnf(f):
        raise ValueError("alternation check expects positive normal form")

    def go(g, env):
        if isinstance(g, FIX):
            kind = type(g)
            for v in free_vars(g):
                if v in env and env[v] is not kind:
                    return False
            return go(g.body, {**env, g.var: kind})
        return all(go(c, env) for c in children(g))

    return go(f, {})


class PolarityError(ValueError):
    pass


def pnf(f):
    """Push negations down to atoms and free variables.

    Bound variables ending up under an odd number of negations raise
    ``PolarityError``; negated free variables are kept as literals.
    """

    def go(g, neg, bound, flip):
        if isinstance(g, TT):
            return FF() if neg else g
        if isinstance(g, FF):
            return TT() if neg else g
        if isinstance(g, Prop):
            return Not(g) if neg else g
        if isinstance(g, Var):
            if g.name in flip:
                neg = not neg
            if neg and g.name in bound:
                raise PolarityError(f"variable {g.name} under odd negation")
            return Not(g) if neg else g
        if isinstance(g, Not):
            return go(g.body, not neg, bound, flip)
        if isinstance(g, (And, Or)):
            op = type(g)
            if neg:
                op = Or if op is And else And
            return op(go(g.left, neg, bound, flip), go(g.right, neg, bound, flip))
        if isinstance(g, MODAL):
            op = type(g)
            if neg:
                op = Box if op is Diamond else Diamond
            return op(g.grade, go(g.body, neg, bound, flip))
        op = type(g)
        bound = bound | {g.var}
        if neg:
            op = Nu if op is Mu else Mu
            return op(g.var, go(g.body, True, bound, flip | {g.var}))
        return op(g.var, go(g.body, False, bound, flip - {g.var}))

    return go(f, False, frozenset(), frozenset())


def negate_var(f, var):
    """``f[var/!var]``."""
    return subst_var(f, var, Not(Var(var)))


def subst_var(f, var, repl, fresh=None):
    """Capture-avoiding substitution of ``repl`` for free ``var``."""
    repl_free = free_vars(repl)
    if fresh is None:
        fresh = Fresh(all_names(f) | all_names(repl) | {var})

    def go(g):
        if isinstance(g, Var):
            return repl if g.name == var else g
        if isinstance(g, FIX):
            if g.var == var or var not in free_vars(g.body):
                return g
            body = g.body
            name = g.var
            if name in repl_free:
                name = fresh(g.var)
                body = subst_var(body, g.var, Var(name), fresh)
            return type(g)(name, go(body))
        return rebuild(g, [go(c) for c in children(g)])

    return go(f)


def suppress(f, var, direction):
    """Time-zero suppression: replace unguarded free occurrences of ``var``
    by ``ff`` (``direction="down"``) or ``tt`` (``"up"``)."""
    if direction not in ("down", "up"):
        raise ValueError(direction)
    const = FF() if direction == "down" else TT()

    def go(g):
        if isinstance(g, Var):
            return const if g.name == var else g
        if isinstance(g, (TT, FF, Prop) + MODAL):
            return g
        if isinstance(g, FIX) and g.var == var:
            return g
        return rebuild(g, [go(c) for c in children(g)])

    return go(f)


def mu_prefix(f):
    """Split a maximal block ``mu X1 ... mu Xk. body``."""
    vs = []
    while isinstance(f, Mu):
        vs.append(f.var)
        f = f.body
    return vs, f


def merge_lfps(f, fresh=None):
    """Merge a block of least fixpoints into one fresh variable.

    Returns ``(Y, body)`` with ``mu Y. body`` equivalent to ``f``.
    """
    if not isinstance(f, Mu):
        raise ValueError("merge_lfps expects a mu-headed formula")
    fresh = fresh or Fresh(all_names(f))
    vs, body = mu_prefix(f)
    y = fresh("Y")
    for v in vs:
        body = subst_var(body, v, Var(y), fresh)
    return y, body
