"""Randomised checks of the structural properties behind the translations.

Each suite draws ``samples`` instances (formula, model, assignment and, where
needed, a node set), all from one seeded stream, and reports the first
violation it meets.
"""
import random
import time

from ..bits import has, members
from ..concrete import show
from ..evaluators import EvalConfig, eval_gmc, eval_msol
from ..evaluators.restrict import VarRoles, one_step_sim, restrict_assignment, restrict_component
from ..syntax import gmc as g
from ..syntax import msol as m
from ..syntax.msol import QuantMode
from .generators import (random_msol, random_mu_block, random_phi, random_positive_gmc,
                         random_theta)
from .report import EquivReport

VARS = ("Y", "Z")


class _Violation(Exception):
    def __init__(self, info):
        super().__init__(info.get("what", "violation"))
        self.info = info


def _mask(rng, tree):
    return rng.getrandbits(tree.n)


def _roles(rng):
    zero = {v for v in VARS if rng.random() < 0.6}
    one = {v for v in VARS if rng.random() < 0.6}
    return VarRoles(zero, one)


def _alpha(rng, tree, names):
    return {v: _mask(rng, tree) for v in sorted(names)}


def _fail(what, tree, formula, alpha, **extra):
    info = {"what": what, "model": tree.to_json(), "formula": show(formula),
            "valuations": {k: members(v) for k, v in alpha.items()}}
    for k, v in extra.items():
        info[k] = members(v) if k.endswith("_set") else v
    raise _Violation(info)


def _subset(a, b):
    return a & ~b == 0


# suites -------------------------------------------------------------------------------

def _monotonicity(rng, tree):
    roles = _roles(rng)
    phi = random_phi(rng, roles.zero, roles.one, 3)
    region = _mask(rng, tree)
    alpha = _alpha(rng, tree, roles.all)
    below = tree.post(region)
    beta = {}
    for v, val in alpha.items():
        need = (region if v in roles.zero else 0) | (below if v in roles.one else 0)
        beta[v] = (val & need) | _mask(rng, tree)
    assert one_step_sim(alpha, beta, region, roles, tree)
    lhs = eval_gmc(phi, tree, alpha) & region
    rhs = eval_gmc(phi, tree, beta)
    if not _subset(lhs, rhs):
        _fail("one-step monotonicity", tree, phi, alpha, region_set=region,
              dominating={k: members(v) for k, v in beta.items()})


def _independence(rng, tree):
    roles = _roles(rng)
    theta = random_theta(rng, roles.zero, roles.one, 3)
    alpha = _alpha(rng, tree, roles.all)
    delta = eval_gmc(theta, tree, alpha)
    for w in members(delta):
        part = restrict_component(delta, w, tree)
        narrowed = restrict_assignment(alpha, part, roles, tree)
        again = eval_gmc(theta, tree, narrowed)
        if not has(again, w) or restrict_component(again, w, tree) != part:
            _fail("independence", tree, theta, alpha, node=w, component_set=part)


def _pick_var(rng, f):
    free = sorted(g.free_vars(f))
    return rng.choice(free) if free else rng.choice(VARS)


def _shannon(rng, tree):
    roles = _roles(rng)
    phi = random_phi(rng, roles.zero, roles.one, 3)
    alpha = _alpha(rng, tree, roles.all | set(VARS))
    x = _pick_var(rng, phi)
    down, up = g.suppress(phi, x, "down"), g.suppress(phi, x, "up")
    expanded = g.Or(down, g.And(g.Var(x), up))
    if eval_gmc(phi, tree, alpha) != eval_gmc(expanded, tree, alpha):
        _fail("shannon expansion", tree, phi, alpha, variable=x)
    # the suppressed formula ignores the evaluation node's own membership
    psi = random_positive_gmc(rng, VARS, 3)
    for f in (phi, psi):
        y = _pick_var(rng, f)
        sup = g.suppress(f, y, "down")
        base = eval_gmc(sup, tree, alpha)
        full = eval_gmc(f, tree, alpha) if f is phi else None
        for w in range(tree.n):
            moved = dict(alpha)
            moved[y] = alpha[y] ^ (1 << w)
            if has(eval_gmc(sup, tree, moved), w) != has(base, w):
                _fail("down-independence", tree, f, alpha, variable=y, node=w)
            if full is not None:
                without = dict(alpha)
                without[y] = alpha[y] & ~(1 << w)
                if has(base, w) != has(eval_gmc(f, tree, without), w):
                    _fail("down versus removal", tree, f, alpha, variable=y, node=w)


def _suppression_order(rng, tree):
    psi = random_positive_gmc(rng, VARS, 3)
    alpha = _alpha(rng, tree, VARS)
    x = _pick_var(rng, psi)
    low = eval_gmc(g.suppress(psi, x, "down"), tree, alpha)
    high = eval_gmc(g.suppress(psi, x, "up"), tree, alpha)
    if not _subset(low, high):
        _fail("suppression order", tree, psi, alpha, variable=x)


def finite_witness_holds(theta, tree, alpha, w):
    """Search the finite subtrees around ``w`` for a witness of ``theta``'s
    least-fixpoint block, as in the characterisation by finite trees."""
    y, body = g.merge_lfps(theta)
    sup = g.suppress(body, y, "down")
    cache = {}

    def ok(region, v):
        part = restrict_component(region, v, tree)
        if part not in cache:
            cache[part] = eval_gmc(sup, tree, {**alpha, y: part})
        return has(cache[part], v)

    for region in tree.domain("T"):
        if has(region, w) and all(ok(region, v) for v in members(region)):
            return True
    return False


def _finite_witness(rng, tree, formula=None):
    if formula is None:
        roles = _roles(rng)
        theta = random_mu_block(rng, roles.zero, roles.one, 2)
    else:
        theta, roles = formula, VarRoles()
    alpha = _alpha(rng, tree, roles.all)
    den = eval_gmc(theta, tree, alpha)
    for w in range(tree.n):
        if has(den, w) != finite_witness_holds(theta, tree, alpha, w):
            _fail("finite witness", tree, theta, alpha, node=w)


def _graded_duality(rng, tree):
    phi = random_positive_gmc(rng, VARS, 3)
    alpha = _alpha(rng, tree, VARS)
    k = rng.randint(0, 3)
    box = eval_gmc(g.Box(k, phi), tree, alpha)
    dia = eval_gmc(g.Diamond(k, g.Not(phi)), tree, alpha)
    if box != tree.full ^ dia:
        _fail("graded duality", tree, phi, alpha, grade=k)


def _mode_coherence(rng, tree):
    f = random_msol(rng, 3, fo=(), so=())
    full = eval_msol(f, tree, cfg=EvalConfig(mode=QuantMode.FULL))
    weak = eval_msol(f, tree, cfg=EvalConfig(mode=QuantMode.WEAK))
    if full != weak:
        _fail("weak equals full on finite trees", tree, f, {})
    kind = m.QuantKind(rng.choice("STP"))
    body = random_msol(rng, 2, fo=(), so=("X",))
    exists = m.SoExists(kind, "X", body)
    if eval_msol(exists, tree, cfg=EvalConfig(mode=QuantMode.COWEAK)):
        _fail("co-weak existentials are false without a horizon", tree, exists, {})


SUITES = {
    "monotonicity": _monotonicity,
    "independence": _independence,
    "shannon": _shannon,
    "suppression-order": _suppression_order,
    "finite-witness": _finite_witness,
    "graded-duality": _graded_duality,
    "mode-coherence": _mode_coherence,
}


def lemma_suite(name, corpus, samples=200, seed=0, formula=None):
    """Run one suite; ``formula`` pins the finite-witness formula."""
    try:
        check = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}") from None
    start = time.perf_counter()
    rng = random.Random(f"{name}:{seed}")
    models = [t for _, t in corpus.models()]
    if not models:
        raise ValueError("empty corpus")
    seen = set()
    for i in range(samples):
        idx = rng.randrange(len(models))
        seen.add(idx)
        try:
            if formula is not None:
                check(rng, models[idx], formula)
            else:
                check(rng, models[idx])
        except _Violation as v:
            elapsed = (time.perf_counter() - start) * 1000
            return EquivReport("fail", len(seen), {**v.info, "sample": i}, elapsed,
                               {"suite": name, "samples": i + 1})
    elapsed = (time.perf_counter() - start) * 1000
    return EquivReport("pass", len(seen), None, elapsed, {"suite": name, "samples": samples})
