"""One-step graded mu-calculus into MTL, and its alternation-free part into
weak MTL."""
from ..syntax import gmc as g
from ..syntax import msol as m
from ..syntax.msol import QuantKind, QuantMode
from .common import Run, TranslationError, TranslationOutput, graded
from .stdlib import maxsubtree


def _dual_body(var, body):
    """``pnf(!body[var/!var])``: the body of the dual fixpoint."""
    return g.pnf(g.Not(g.negate_var(body, var)))


def _common(run, f, x, env, rec):
    if isinstance(f, g.TT):
        return m.TT()
    if isinstance(f, g.FF):
        return m.FF()
    if isinstance(f, g.Prop):
        return m.Atom(f.name, x)
    if isinstance(f, g.Var):
        return m.Member(x, env.get(f.name, f.name))
    if isinstance(f, g.Not):
        return m.Not(rec(f.body, x, env))
    if isinstance(f, g.And):
        return m.And(rec(f.left, x, env), rec(f.right, x, env))
    if isinstance(f, g.Or):
        return m.Or(rec(f.left, x, env), rec(f.right, x, env))
    if isinstance(f, g.Diamond):
        return graded(run, x, f.grade, lambda y: rec(f.body, y, env))
    if isinstance(f, g.Box):
        return m.Not(graded(run, x, f.grade, lambda y: m.Not(rec(f.body, y, env))))
    return None


def _post_fixpoint(run, var, body, x, env, rec):
    """Some subtree holding ``x`` whose every node satisfies ``body``."""
    s, x1 = run.new(var), run.new("x")
    inner = rec(body, x1, {**env, var: s})
    return m.SoExists(QuantKind.T, s, m.And(m.Member(x, s),
                                           m.Forall(x1, m.Implies(m.Member(x1, s), inner))))


def _avoid(f, x):
    return g.all_names(f) | g.props(f) | {x}


def osgmc_to_mtl(f, x="x", zero=(), one=()):
    """MTL formula in the free variable ``x`` with the denotation of ``f``."""
    verdict = g.check_one_step(f, zero, one)
    if not verdict.ok:
        raise TranslationError(f"not in the one-step fragment: {verdict.reason} "
                               f"(at {verdict.path})")
    run = Run(_avoid(f, x))

    def tr(h, y, env):
        out = _common(run, h, y, env, tr)
        if out is not None:
            return out
        if isinstance(h, g.Nu):
            return _post_fixpoint(run, h.var, h.body, y, env, tr)
        return m.Not(tr(g.Nu(h.var, _dual_body(h.var, h.body)), y, env))

    return TranslationOutput(tr(f, x, {}), x, run.issued, QuantMode.FULL)


def osafgmc_to_wmtl(f, x="x", zero=(), one=()):
    """Weak-MTL formula in the free variable ``x`` with the denotation of ``f``
    on finitely branching trees."""
    f = g.pnf(f)
    if not g.check_alternation_free(f):
        raise TranslationError("formula is not alternation free")
    verdict = g.check_one_step(f, zero, one)
    if not verdict.ok:
        raise TranslationError(f"not in the one-step fragment: {verdict.reason} "
                               f"(at {verdict.path})")
    run = Run(_avoid(f, x))

    def tr(h, y, env):
        out = _common(run, h, y, env, tr)
        if out is not None:
            return out
        if isinstance(h, g.Nu):
            return m.Not(tr(g.Mu(h.var, _dual_body(h.var, h.body)), y, env))
        names, body = g.mu_prefix(h)
        if isinstance(body, g.Nu):
            # alternation freedom keeps the mu variables out of this body
            return tr(body, y, env)
        merged = run.new("Y")
        for v in names:
            body = g.subst_var(body, v, g.Var(merged), run.fresh)
        body = g.suppress(body, merged, "down")
        witness, x1 = run.new("X"), run.new("x")
        step = m.SoExists(QuantKind.T, merged,
                          m.And(maxsubtree(merged, witness, x1, run.fresh),
                                tr(body, x1, {**env, merged: merged})))
        return m.SoExists(QuantKind.T, witness,
                          m.And(m.Member(y, witness),
                                m.Forall(x1, m.Implies(m.Member(x1, witness), step))))

    return TranslationOutput(tr(f, x, {}), x, run.issued, QuantMode.WEAK)
