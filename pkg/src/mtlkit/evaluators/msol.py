"""Brute-force MSOL evaluation on finite trees.

Formulas are compiled once into closures ``fn(ctx, target)``.  When
``target`` names a free first-order variable the closure returns the mask
of nodes that make the formula true for that variable; otherwise it returns
the full mask or 0.  Quantifier nodes memoise on the values of their free
variables, and quantifiers guarded by a conjunct such as ``v in X`` or
``u < v`` only visit the nodes (or sets) the guard admits.
"""
from itertools import count
from operator import itemgetter

from ..bits import members
from ..syntax import msol as m
from .config import DEFAULT, EvalConfig, EvalError

_ids = count()


class _Ctx:
    __slots__ = ("fo", "so", "full", "desc", "anc", "sdesc", "sanc", "lab", "memo", "tree",
                 "cfg", "doms", "kids", "parent", "parent_mask")

    def __init__(self, tree, cfg, fo, so):
        self.tree = tree
        self.cfg = cfg
        self.fo = dict(fo)
        self.so = dict(so)
        self.full = tree.full
        self.desc = tree.desc
        self.anc = tree.anc
        self.sdesc = tuple(d & ~(1 << v) for v, d in enumerate(tree.desc))
        self.sanc = tuple(a & ~(1 << v) for v, a in enumerate(tree.anc))
        self.lab = tree.label_mask
        self.kids = tree.child_mask
        self.parent = tree.parent
        self.parent_mask = tuple(0 if p is None else 1 << p for p in tree.parent)
        self.memo = {}
        self.doms = {}

    def domain_set(self, kind):
        key = ("set", kind)
        d = self.doms.get(key)
        if d is None:
            d = self.doms[key] = frozenset(self.domain(kind))
        return d

    def domain(self, kind):
        d = self.doms.get(kind)
        if d is None:
            d = self.doms[kind] = self.tree.domain(kind, self.cfg.mode, self.cfg.horizon)
        return d


def _child_pattern(f):
    """``(x, y)`` when ``f`` is ``x < y & !E z. (x < z & z < y)``."""
    if (isinstance(f, m.And) and isinstance(f.left, m.Lt) and isinstance(f.right, m.Not)
            and isinstance(f.right.body, m.Exists)):
        x, y = f.left.left, f.left.right
        q = f.right.body
        b = q.body
        if (x != y and q.var not in (x, y) and isinstance(b, m.And)
                and b.left == m.Lt(x, q.var) and b.right == m.Lt(q.var, y)):
            return x, y
    return None


def _conjuncts(f):
    while isinstance(f, m.Not) and isinstance(f.body, m.Not):
        f = f.body.body
    if isinstance(f, m.And) and _child_pattern(f) is None:
        return _conjuncts(f.left) + _conjuncts(f.right)
    return [f]


def _fo_guards(v, parts):
    """Masks restricting the witnesses of ``v``: ``(table, other-var)``."""
    out = []
    for g in parts:
        pair = _child_pattern(g)
        if pair is not None and v in pair and pair[0] != pair[1]:
            x, y = pair
            out.append(("kids", x) if y == v else ("up", y))
            continue
        if isinstance(g, m.Member) and g.var == v:
            out.append(("so", g.setvar))
        elif isinstance(g, m.Atom) and g.var == v:
            out.append(("lab", g.prop))
        elif isinstance(g, (m.Leq, m.Lt, m.Eq)) and g.left != g.right:
            strict = isinstance(g, m.Lt)
            if g.right == v:
                kind = "eq" if isinstance(g, m.Eq) else ("sdesc" if strict else "desc")
                out.append((kind, g.left))
            elif g.left == v:
                kind = "eq" if isinstance(g, m.Eq) else ("sanc" if strict else "anc")
                out.append((kind, g.right))
    return tuple(out)


def _guard_mask(c, t, guards):
    mask = c.full
    for kind, other in guards:
        if kind == "so":
            mask &= c.so[other]
        elif kind == "lab":
            mask &= c.lab.get(other, 0)
        elif other == t:
            continue
        elif kind == "eq":
            mask &= 1 << c.fo[other]
        elif kind == "kids":
            mask &= c.kids[c.fo[other]]
        elif kind == "up":
            p = c.parent[c.fo[other]]
            mask &= 0 if p is None else 1 << p
        else:
            mask &= getattr(c, kind)[c.fo[other]]
    return mask


def _so_guards(var, parts):
    """``("has", u)`` for ``u in X``; ``("sub", Y)`` for ``A z. (z in X -> z in Y)``."""
    out = []
    for g in parts:
        if isinstance(g, m.Member) and g.setvar == var:
            out.append(("has", g.var))
        elif (isinstance(g, m.Forall) and isinstance(g.body, m.Implies)
              and isinstance(g.body.left, m.Member) and isinstance(g.body.right, m.Member)
              and g.body.left.var == g.var == g.body.right.var
              and g.body.left.setvar == var and g.body.right.setvar != var):
            out.append(("sub", g.body.right.setvar))
    return tuple(out)


def _so_filter(c, t, guards, domain):
    need, sub = 0, None
    for kind, other in guards:
        if kind == "has":
            if other != t:
                need |= 1 << c.fo[other]
        else:
            cap = c.so[other]
            sub = cap if sub is None else sub & cap
    if not need and sub is None:
        return domain
    if sub is None:
        return [s for s in domain if s & need == need]
    out_of = c.full ^ sub
    return [s for s in domain if s & need == need and not s & out_of]


def _compile(f):
    """Return ``(fn, free_fo, free_so)``."""
    if isinstance(f, m.TT):
        return (lambda c, t: c.full), frozenset(), frozenset()
    if isinstance(f, m.FF):
        return (lambda c, t: 0), frozenset(), frozenset()
    if isinstance(f, m.Atom):
        p, v = f.prop, f.var

        def atom(c, t):
            s = c.lab.get(p, 0)
            if v == t:
                return s
            return c.full if s >> c.fo[v] & 1 else 0
        return atom, frozenset((v,)), frozenset()
    if isinstance(f, (m.Leq, m.Lt)):
        x, y = f.left, f.right
        strict = isinstance(f, m.Lt)
        if x == y:
            return ((lambda c, t: 0) if strict else (lambda c, t: c.full)), frozenset((x,)), frozenset()
        up, down = ("sanc", "sdesc") if strict else ("anc", "desc")

        def order(c, t):
            if x == t:
                return getattr(c, up)[c.fo[y]]
            if y == t:
                return getattr(c, down)[c.fo[x]]
            return c.full if getattr(c, down)[c.fo[x]] >> c.fo[y] & 1 else 0
        return order, frozenset((x, y)), frozenset()
    if isinstance(f, m.Eq):
        x, y = f.left, f.right
        if x == y:
            return (lambda c, t: c.full), frozenset((x,)), frozenset()

        def equal(c, t):
            if x == t:
                return 1 << c.fo[y]
            if y == t:
                return 1 << c.fo[x]
            return c.full if c.fo[x] == c.fo[y] else 0
        return equal, frozenset((x, y)), frozenset()
    if isinstance(f, m.Member):
        v, var = f.var, f.setvar

        def member(c, t):
            s = c.so[var]
            if v == t:
                return s
            return c.full if s >> c.fo[v] & 1 else 0
        return member, frozenset((v,)), frozenset((var,))
    pair = _child_pattern(f)
    if pair is not None:
        x, y = pair

        def is_child(c, t):
            if y == t:
                return c.kids[c.fo[x]]
            if x == t:
                return c.parent_mask[c.fo[y]]
            return c.full if c.parent[c.fo[y]] == c.fo[x] else 0
        return is_child, frozenset(pair), frozenset()
    if isinstance(f, m.Not) and isinstance(f.body, m.Not):
        return _compile(f.body.body)
    if isinstance(f, m.Not):
        g, fo, so = _compile(f.body)
        return (lambda c, t: c.full ^ g(c, t)), fo, so
    if isinstance(f, m.BINARY):
        lf, lfo, lso = _compile(f.left)
        rf, rfo, rso = _compile(f.right)
        fo, so = lfo | rfo, lso | rso
        if isinstance(f, m.And):
            def conj(c, t):
                a = lf(c, t)
                return a & rf(c, t) if a else 0
            return conj, fo, so
        if isinstance(f, m.Or):
            def disj(c, t):
                a = lf(c, t)
                return a if a == c.full else a | rf(c, t)
            return disj, fo, so
        if isinstance(f, m.Implies):
            def imp(c, t):
                a = lf(c, t)
                return c.full if not a else (c.full ^ a) | rf(c, t)
            return imp, fo, so
        return (lambda c, t: c.full ^ lf(c, t) ^ rf(c, t)), fo, so
    if isinstance(f, m.FO_QUANT):
        return _compile_fo_quant(f)
    return _compile_so_quant(f)


def _getter(names):
    if not names:
        return lambda env: ()
    return itemgetter(*names)


def _keyer(nid, fo, so):
    """Memo-key builder per target: the values of the free variables other than
    the target, which is folded in only when the formula depends on it."""
    so_get = _getter(tuple(sorted(so)))
    cache = {}

    def key(c, t):
        fo_get = cache.get(t)
        if fo_get is None:
            fo_get = cache[t] = _getter(tuple(sorted(u for u in fo if u != t)))
        return (nid, t if t in fo else None, fo_get(c.fo), so_get(c.so))

    return key


def _one_step(f, exists):
    """Spot ``E v. (child(a, v) & rest)`` and ``A v. (child(a, v) & rest -> body)``
    (or the parent-side versions) with ``a`` absent elsewhere.  For target ``a``
    the quantifier is then an image of the step formula's denotation over
    ``v`` under the child relation: ``(a, step_fn, downward)``."""
    v = f.var
    if exists:
        parts, tail = _conjuncts(f.body), None
    elif isinstance(f.body, m.Implies):
        parts, tail = _conjuncts(f.body.left), f.body.right
    else:
        return None
    for i, g in enumerate(parts):
        pair = _child_pattern(g)
        if pair is None or v not in pair:
            continue
        other = pair[0] if pair[1] == v else pair[1]
        rest = parts[:i] + parts[i + 1:]
        step = None
        for r in rest:
            step = r if step is None else m.And(step, r)
        if tail is not None:
            step = tail if step is None else m.Implies(step, tail)
        step = step or m.TT()
        fn, sfo, _ = _compile(step)
        if other in sfo:
            continue
        return other, fn, pair[1] == v
    return None


def _image(c, v, exists, fn, downward):
    # downward: the target is the parent of v, so map v's witnesses to parents
    step = fn(c, v)
    table = c.parent_mask if downward else c.kids
    if exists:
        acc = 0
        for y in members(step):
            acc |= table[y]
        return acc
    bad = 0
    for y in members(c.full ^ step):
        bad |= table[y]
    return c.full ^ bad


def _compile_fo_quant(f):
    v = f.var
    body, bfo, bso = _compile(f.body)
    fo, so = bfo - {v}, bso
    memo_key = _keyer(next(_ids), fo, so)
    exists = isinstance(f, m.Exists)
    if exists:
        guards = _fo_guards(v, _conjuncts(f.body))
    elif isinstance(f.body, m.Implies):
        guards = _fo_guards(v, _conjuncts(f.body.left))
    else:
        guards = ()

    shortcut = _one_step(f, exists)

    def quant(c, t):
        tfree = t in fo
        key = memo_key(c, t)
        hit = c.memo.get(key)
        if hit is not None:
            return hit
        full = c.full
        if shortcut is not None and t == shortcut[0]:
            res = _image(c, v, exists, *shortcut[1:])
        elif not tfree:
            w = body(c, v)
            res = (full if w else 0) if exists else (full if w == full else 0)
        else:
            env = c.fo
            saved = env.get(v)
            acc = 0 if exists else full
            for node in members(_guard_mask(c, t, guards)):
                env[v] = node
                if exists:
                    acc |= body(c, t)
                    if acc == full:
                        break
                else:
                    acc &= body(c, t)
                    if not acc:
                        break
            if saved is None:
                env.pop(v, None)
            else:
                env[v] = saved
            res = acc
        c.memo[key] = res
        return res

    return quant, fo, so


def _definition(var, parts):
    """A conjunct ``A u. (u in var <-> psi)`` with ``var`` absent from ``psi``
    pins ``var`` to a single set; return ``(u, psi)``."""
    for g in parts:
        if (isinstance(g, m.Forall) and isinstance(g.body, m.Iff)
                and g.body.left == m.Member(g.var, var)
                and var not in m.free_vars(g.body.right)[1]):
            return g.var, g.body.right
    return None


def _compile_so_quant(f):
    var, kind = f.var, f.kind
    body, bfo, bso = _compile(f.body)
    fo, so = bfo, bso - {var}
    memo_key = _keyer(next(_ids), fo, so)
    exists = isinstance(f, m.SoExists)
    if exists:
        parts = _conjuncts(f.body)
    elif isinstance(f.body, m.Implies):
        parts = _conjuncts(f.body.left)
    else:
        parts = []
    guards = _so_guards(var, parts)
    definition = _definition(var, parts)
    if definition is not None:
        def_var = definition[0]
        def_fn, def_fo, _ = _compile(definition[1])
        def_fo = def_fo - {def_var}

    def loop(c, t, candidates):
        env = c.so
        saved = env.get(var)
        acc = 0 if exists else c.full
        for s in candidates:
            env[var] = s
            if exists:
                acc |= body(c, t)
                if acc == c.full:
                    break
            else:
                acc &= body(c, t)
                if not acc:
                    break
        if saved is None:
            env.pop(var, None)
        else:
            env[var] = saved
        return acc

    def pinned(c):
        s = def_fn(c, def_var)
        return (s,) if s in c.domain_set(kind) else ()

    def quant(c, t):
        tfree = t in fo
        key = memo_key(c, t)
        hit = c.memo.get(key)
        if hit is not None:
            return hit
        tt = t if tfree else None
        if definition is None:
            res = loop(c, tt, _so_filter(c, tt, guards, c.domain(kind)))
        elif tt is None or tt not in def_fo:
            res = loop(c, tt, pinned(c))
        else:
            # the pinned set depends on the target: fix the target node by node
            env = c.fo
            saved = env.get(tt)
            res = 0
            for w in range(c.tree.n):
                env[tt] = w
                if loop(c, None, pinned(c)):
                    res |= 1 << w
            if saved is None:
                env.pop(tt, None)
            else:
                env[tt] = saved
        c.memo[key] = res
        return res

    return quant, fo, so


class CompiledMsol:
    """A formula compiled for repeated evaluation over many trees."""

    def __init__(self, formula):
        self.formula = formula
        self.fn, self.free_fo, self.free_so = _compile(formula)


def compile_msol(f):
    return f if isinstance(f, CompiledMsol) else CompiledMsol(f)


def _run(comp, tree, fo, so, cfg, target):
    missing_fo = comp.free_fo - set(fo) - ({target} if target else set())
    missing_so = comp.free_so - set(so)
    if missing_fo or missing_so:
        raise EvalError(f"unbound variables: {sorted(missing_fo | missing_so)}")
    for v, node in fo.items():
        if not 0 <= node < tree.n:
            raise EvalError(f"{v} bound to unknown node {node}")
    c = _Ctx(tree, cfg or DEFAULT, fo, so)
    return comp.fn(c, target)


def _mask(s):
    if isinstance(s, int):
        return s
    out = 0
    for v in s:
        out |= 1 << v
    return out


def eval_msol(f, tree, v1=None, v2=None, cfg=None):
    """Truth of ``f`` under first-order valuation ``v1`` (var -> node) and
    second-order valuation ``v2`` (var -> mask or iterable of nodes)."""
    comp = compile_msol(f)
    so = {k: _mask(s) for k, s in (v2 or {}).items()}
    return _run(comp, tree, dict(v1 or {}), so, cfg, None) != 0


def denot_msol(f, x, tree, v2=None, cfg=None):
    """Mask of the nodes ``w`` with ``f`` true under ``x -> w``."""
    comp = compile_msol(f)
    extra = comp.free_fo - {x}
    if extra:
        raise EvalError(f"extra free first-order variables: {sorted(extra)}")
    so = {k: _mask(s) for k, s in (v2 or {}).items()}
    res = _run(comp, tree, {}, so, cfg, x)
    return res if x in comp.free_fo else (tree.full if res else 0)


__all__ = ["CompiledMsol", "EvalConfig", "compile_msol", "denot_msol", "eval_msol"]
