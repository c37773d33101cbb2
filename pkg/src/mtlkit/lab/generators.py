"""Seeded random formula generators and size-ordered enumerators.

Random generators take a ``random.Random`` instance so callers control the
stream; enumerators are deterministic and yield formulas in order of size.
"""
from itertools import count

from ..syntax import gmc as g
from ..syntax import msol as m
from ..syntax import temporal as tl

PROPS = ("a", "q")


class _Names:
    """Fresh upper-case fixpoint variable names for one generated formula."""

    def __init__(self, avoid=()):
        self.avoid = set(avoid)
        self.counter = count()

    def __call__(self):
        while True:
            name = f"X{next(self.counter)}"
            if name not in self.avoid:
                return name


# graded mu-calculus --------------------------------------------------------------

def _gmc_leaf(rng, props, usable):
    if usable and rng.random() < 0.5:
        return g.Var(rng.choice(sorted(usable)))
    return rng.choice([g.TT(), g.FF()] + [g.Prop(p) for p in props] * 2)


def random_phi(rng, zero=(), one=(), depth=3, props=PROPS, max_grade=2, names=None):
    """A base formula of the one-step fragment with roles ``(zero, one)``.

    Variables only occur positively; embedded fixpoint formulas are closed.
    """
    names = names or _Names(set(zero) | set(one))

    def go(zero, one, d, neg):
        usable = () if neg else zero
        if d <= 0 or rng.random() < 0.2:
            return _gmc_leaf(rng, props, usable)
        op = rng.choice(("not", "and", "or", "dia", "box", "and", "or", "dia", "box", "theta"))
        if op == "not":
            return g.Not(go(zero, one, d - 1, not neg))
        if op in ("and", "or"):
            cls = g.And if op == "and" else g.Or
            return cls(go(zero, one, d - 1, neg), go(zero, one, d - 1, neg))
        if op in ("dia", "box"):
            cls = g.Diamond if op == "dia" else g.Box
            return cls(rng.randint(1, max_grade), go(one, frozenset(), d - 1, neg))
        return random_theta(rng, (), (), d - 1, props, max_grade, names)

    return go(frozenset(zero), frozenset(one), depth, False)


def random_theta(rng, zero=(), one=(), depth=3, props=PROPS, max_grade=2, names=None,
                 binders=(1, 2)):
    """A fixpoint formula of the one-step fragment: a block of binders over a
    base formula that may use the bound variables."""
    names = names or _Names(set(zero) | set(one))
    zero, one = set(zero), set(one)
    block = []
    for _ in range(rng.randint(*binders)):
        v = names()
        block.append((rng.choice((g.Mu, g.Nu)), v))
        zero.add(v)
        one.add(v)
    body = random_phi(rng, zero, one, max(depth, 1), props, max_grade, names)
    for cls, v in reversed(block):
        body = cls(v, body)
    return body


def random_mu_block(rng, zero=(), one=(), depth=3, props=PROPS, max_grade=2):
    """``mu X1 ... mu Xk. phi`` with ``phi`` a base formula over the block."""
    names = _Names(set(zero) | set(one))
    block = [names() for _ in range(rng.randint(1, 2))]
    body = random_phi(rng, set(zero) | set(block), set(one) | set(block), depth, props,
                      max_grade, names)
    for v in reversed(block):
        body = g.Mu(v, body)
    return body


def random_positive_gmc(rng, free=(), depth=3, props=PROPS, max_grade=2):
    """An unrestricted graded mu-calculus formula, negations on atoms only."""
    names = _Names(free)

    def go(vars_, d):
        if d <= 0 or rng.random() < 0.2:
            pool = [g.TT(), g.FF()] + [g.Prop(p) for p in props]
            pool += [g.Not(g.Prop(p)) for p in props] + [g.Var(v) for v in sorted(vars_)] * 2
            return rng.choice(pool)
        op = rng.choice(("and", "or", "dia", "box", "mu", "nu"))
        if op in ("and", "or"):
            cls = g.And if op == "and" else g.Or
            return cls(go(vars_, d - 1), go(vars_, d - 1))
        if op in ("dia", "box"):
            cls = g.Diamond if op == "dia" else g.Box
            return cls(rng.randint(1, max_grade), go(vars_, d - 1))
        v = names()
        cls = g.Mu if op == "mu" else g.Nu
        return cls(v, go(vars_ | {v}, d - 1))

    return go(frozenset(free), depth)


def random_gmc(rng, depth=6, props=PROPS, max_grade=3):
    """Any well-formed formula (negation anywhere), for syntax tests."""
    names = _Names()

    def go(vars_, d):
        if d <= 0 or rng.random() < 0.15:
            return _gmc_leaf(rng, props, vars_)
        op = rng.choice(("not", "and", "or", "dia", "box", "mu", "nu"))
        if op == "not":
            return g.Not(go(vars_, d - 1))
        if op in ("and", "or"):
            return (g.And if op == "and" else g.Or)(go(vars_, d - 1), go(vars_, d - 1))
        if op in ("dia", "box"):
            return (g.Diamond if op == "dia" else g.Box)(rng.randint(0, max_grade),
                                                          go(vars_, d - 1))
        v = names()
        return (g.Mu if op == "mu" else g.Nu)(v, go(vars_ | {v}, d - 1))

    return go(frozenset(), depth)


# temporal logics -------------------------------------------------------------------

def random_temporal(rng, depth=6, props=PROPS, semilattice=False, max_grade=3):
    """A random state formula of CCTL* (or of the semilattice extension)."""

    def leaf():
        return rng.choice([tl.TT(), tl.FF()] + [tl.Prop(p) for p in props])

    def state(d):
        if d <= 0 or rng.random() < 0.15:
            return leaf()
        ops = ["not", "and", "or", "imp", "E", "A", "D"]
        if semilattice:
            ops += ["lat", "lat"]
        op = rng.choice(ops)
        if op == "not":
            return tl.Not(state(d - 1))
        if op in ("and", "or", "imp"):
            cls = {"and": tl.And, "or": tl.Or, "imp": tl.Implies}[op]
            return cls(state(d - 1), state(d - 1))
        if op in ("E", "A"):
            return (tl.E if op == "E" else tl.A)(path(d - 1))
        if op == "D":
            return tl.D(rng.randint(0, max_grade), state(d - 1))
        cls = rng.choice((tl.UU, tl.RR, tl.SS, tl.BB))
        return cls(state(d - 1), state(d - 1), state(d - 1))

    def path(d):
        if d <= 0 or rng.random() < 0.2:
            return state(d)
        op = rng.choice(("not", "and", "or", "X", "F", "G", "U", "R"))
        if op == "not":
            return tl.Not(path(d - 1))
        if op in ("and", "or"):
            return (tl.And if op == "and" else tl.Or)(path(d - 1), path(d - 1))
        if op in ("X", "F", "G"):
            return {"X": tl.Next, "F": tl.Eventually, "G": tl.Globally}[op](path(d - 1))
        return (tl.Until if op == "U" else tl.Release)(path(d - 1), path(d - 1))

    return state(depth)


def _sized(max_size, props, semilattice, max_grade):
    """Tables ``state[s]`` and ``path[s]`` of all formulas of size ``s``."""
    state = {1: [tl.TT(), tl.FF()] + [tl.Prop(p) for p in props]}
    path = {1: list(state[1])}
    for s in range(2, max_size + 1):
        st, pa = [], []
        st += [tl.Not(f) for f in state[s - 1]]
        pa += [tl.Not(f) for f in path[s - 1] if not tl.is_state(f)]
        for left_size in range(1, s - 1):
            right_size = s - 1 - left_size
            for cls in (tl.And, tl.Or):
                st += [cls(a, b) for a in state[left_size] for b in state[right_size]]
                pa += [cls(a, b) for a in path[left_size] for b in path[right_size]
                       if not (tl.is_state(a) and tl.is_state(b))]
            for cls in (tl.Until, tl.Release):
                pa += [cls(a, b) for a in path[left_size] for b in path[right_size]]
        st += [tl.E(f) for f in path[s - 1]] + [tl.A(f) for f in path[s - 1]]
        pa += [cls(f) for cls in (tl.Next, tl.Eventually, tl.Globally) for f in path[s - 1]]
        for k in range(1, max_grade + 1):
            if s - 1 - k >= 1:
                st += [tl.D(k, f) for f in state[s - 1 - k]]
        if semilattice:
            for a in range(1, s - 2):
                for b in range(1, s - 1 - a):
                    c = s - 1 - a - b
                    for cls in (tl.UU, tl.RR, tl.SS, tl.BB):
                        st += [cls(x, y, z) for x in state[a] for y in state[b] for z in state[c]]
        state[s] = st
        path[s] = st + pa
    return state, path


def enumerate_cctl(max_size, props=("a",), kind="state", max_grade=None, semilattice=False):
    """All formulas up to ``max_size`` (unary grade size), smallest first."""
    if kind not in ("state", "path"):
        raise ValueError(kind)
    grade = max_size if max_grade is None else max_grade
    state, path = _sized(max_size, props, semilattice, grade)
    table = state if kind == "state" else path
    for s in range(1, max_size + 1):
        yield from table[s]


def enumerate_balanced_paths(max_size, props=("a",)):
    return (f for f in enumerate_cctl(max_size, props, "path") if tl.is_balanced(f))


# monadic second-order logic ------------------------------------------------------------

def random_msol(rng, depth=6, props=PROPS, fo=("x",), so=(), kinds="STP"):
    """A random formula whose free variables lie within ``fo`` and ``so``."""
    counter = count()

    def go(fo, so, d):
        if d <= 0 or rng.random() < 0.15:
            opts = [m.TT(), m.FF()]
            if fo:
                x, y = rng.choice(fo), rng.choice(fo)
                opts += [m.Atom(rng.choice(props), x), m.Leq(x, y), m.Lt(x, y), m.Eq(x, y)]
                if so:
                    opts.append(m.Member(x, rng.choice(so)))
            return rng.choice(opts)
        op = rng.choice(("not", "and", "or", "imp", "iff", "E", "A", "SE", "SA"))
        if op == "not":
            return m.Not(go(fo, so, d - 1))
        if op in ("and", "or", "imp", "iff"):
            cls = {"and": m.And, "or": m.Or, "imp": m.Implies, "iff": m.Iff}[op]
            return cls(go(fo, so, d - 1), go(fo, so, d - 1))
        if op in ("E", "A"):
            v = f"x{next(counter)}"
            return (m.Exists if op == "E" else m.Forall)(v, go(fo + (v,), so, d - 1))
        v = f"X{next(counter)}"
        kind = m.QuantKind(rng.choice(kinds))
        cls = m.SoExists if op == "SE" else m.SoForall
        return cls(kind, v, go(fo, so + (v,), d - 1))

    return go(tuple(fo), tuple(so), depth)


def random_formula(logic, rng, depth=6):
    """Dispatch used by the round-trip checks."""
    if logic == "msol":
        return random_msol(rng, depth, fo=("x",), so=("Y",))
    if logic == "gmc":
        return random_gmc(rng, depth)
    if logic == "cctl":
        return random_temporal(rng, depth)
    if logic == "stl":
        return random_temporal(rng, depth, semilattice=True)
    raise ValueError(f"unknown logic {logic!r}")
