"""Eliminating subtree quantifiers with finite/infinite case splits.

On a chain every subtree is a segment, so a subtree variable can be replaced
by its two endpoints (or only its start, for a suffix).  The co-weak variant
keeps the quantifier for the infinite case and simulates finite subtrees
inside an infinite one cut below a node.
"""
from ..syntax import msol as m
from ..syntax.msol import QuantKind, QuantMode
from .common import Run, TranslationError, TranslationOutput
from .stdlib import theta_cow


def _rewrite(f, run, split, member):
    """Shared traversal: ``split(var, body_for_flag)`` builds the two-case
    form of an existential subtree quantifier, ``member(entry, z)`` rewrites
    a membership test against a bound subtree variable."""

    def go(g, env):
        if isinstance(g, m.Member):
            entry = env.get(g.setvar)
            return g if entry is None else member(entry, g.var)
        if isinstance(g, m.ATOMIC):
            return g
        if isinstance(g, m.SO_QUANT):
            if g.kind is not QuantKind.T:
                raise TranslationError(f"only subtree quantifiers are supported, got {g.kind.value}")
            body = g.body if isinstance(g, m.SoExists) else m.Not(g.body)
            out = split(g.var, lambda entry: go(body, {**env, g.var: entry}))
            return out if isinstance(g, m.SoExists) else m.Not(out)
        return m.rebuild(g, [go(c, env) for c in m.children(g)])

    return go(f, {})


def mtl_chain_to_fo(f):
    """First-order formula equivalent to ``f`` on chains."""
    if not m.so_kinds(f):
        return f
    run = Run(m.all_names(f))

    def split(var, body):
        lo, hi = run.new("x"), run.new("x")
        suffix = m.Exists(lo, body(("inf", lo)))
        segment = m.Exists(lo, m.Exists(hi, m.And(m.Leq(lo, hi), body(("fin", lo, hi)))))
        return m.Or(suffix, segment)

    def member(entry, z):
        if entry[0] == "inf":
            return m.Leq(entry[1], z)
        return m.And(m.Leq(entry[1], z), m.Leq(z, entry[2]))

    return _rewrite(f, run, split, member)


def mtl_to_cowmtl(f):
    """MTL formula whose co-weak reading matches the full reading of ``f``."""
    if not m.so_kinds(f):
        return TranslationOutput(f, None, [], QuantMode.COWEAK)
    run = Run(m.all_names(f))

    def split(var, body):
        bar_set, bar_node = run.new(var), run.new("x")
        infinite = m.SoExists(QuantKind.T, var, body(("inf", var)))
        guard = theta_cow(bar_node, bar_set, run.fresh)
        finite = m.SoExists(QuantKind.T, bar_set,
                            m.Exists(bar_node, m.And(guard, body(("fin", bar_set, bar_node)))))
        return m.Or(infinite, finite)

    def member(entry, z):
        if entry[0] == "inf":
            return m.Member(z, entry[1])
        return m.And(m.Member(z, entry[1]), m.Not(m.Lt(entry[2], z)))

    return TranslationOutput(_rewrite(f, run, split, member), None, run.issued, QuantMode.COWEAK)
