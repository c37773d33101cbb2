"""Hypothesis properties: invariants quantified over generated formulas and
small trees.  Formulas come from the package's seeded generators, so each
hypothesis example is a seed."""
import random

from hypothesis import assume, given, strategies as st

from mtlkit.bits import members
from mtlkit.concrete import ParseError, parse, show
from mtlkit.evaluators import (EvalConfig, cctl_denotation, denot_msol, eval_gmc,
                               eval_gmc_graph, eval_msol, eval_path, restrict_component)
from mtlkit.lab import Binding, Corpus, equiv_check, lemma_suite
from mtlkit.lab.generators import (random_gmc, random_msol, random_positive_gmc, random_temporal,
                                   random_theta)
from mtlkit.models import (KripkeStructure, enumerate_trees, gen_a, gen_na, kripke_a, kripke_d,
                           kripke_na, kripke_nd, unfold)
from mtlkit.syntax import free_vars
from mtlkit.syntax import gmc as g
from mtlkit.syntax import msol as m
from mtlkit.syntax import temporal as tl
from mtlkit.syntax.msol import QuantKind, QuantMode
from mtlkit.translators import (TranslationError, cctl_to_mpl, osafgmc_to_wmtl, osgmc_to_mtl,
                                stdlib)

TREES5 = list(enumerate_trees(5, ("a", "q"), unordered=True))
TREES4 = [t for t in TREES5 if t.n <= 4]
seeds = st.integers(0, 2**32 - 1)
tree5 = st.sampled_from(TREES5)
tree4 = st.sampled_from(TREES4)
KRIPKE = {"nd": kripke_nd, "d": kripke_d, "a": kripke_a, "na": kripke_na}


def rng_of(seed):
    return random.Random(seed)


def random_alpha(rng, tree, names):
    return {v: rng.getrandbits(tree.n) for v in names}


# syntax ------------------------------------------------------------------------------

@given(seeds)
def test_desugar_idempotent(seed):
    f = random_msol(rng_of(seed), 5, fo=("x",), so=("Y",))
    once = m.desugar(f)
    assert m.desugar(once) == once


@given(seeds, tree5)
def test_pnf_preserves_denotation(seed, tree):
    rng = rng_of(seed)
    f = random_gmc(rng, 4, max_grade=2)
    try:
        p = g.pnf(f)
    except g.PolarityError:
        assume(False)
    alpha = random_alpha(rng, tree, g.free_vars(f))
    assert g.is_pnf(p)
    assert eval_gmc(f, tree, alpha) == eval_gmc(p, tree, alpha)


@given(seeds, tree5)
def test_suppression_order(seed, tree):
    rng = rng_of(seed)
    f = random_positive_gmc(rng, ("X", "Z"), 4)
    alpha = random_alpha(rng, tree, ("X", "Z"))
    low = eval_gmc(g.suppress(f, "X", "down"), tree, alpha)
    high = eval_gmc(g.suppress(f, "X", "up"), tree, alpha)
    assert low & ~high == 0


@given(seeds)
def test_dualising_stays_in_fragment(seed):
    rng = rng_of(seed)
    theta = random_theta(rng, ("X",), ("X",), 3)
    assert g.check_one_step(theta, {"X"}, {"X"}).kind == "theta"
    dual = g.pnf(g.Not(g.subst_var(theta, "X", g.Not(g.Var("X")))))
    assert g.check_one_step(dual, {"X"}, {"X"}).kind == "theta"


@given(seeds)
def test_balance(seed):
    rng = rng_of(seed)
    f = random_temporal(rng, 4)
    paths = [h for h in _subformulas(f) if not tl.is_state(h)]
    for h in paths:
        b = tl.balance(h)
        assert tl.is_balanced(b)
        cfg = EvalConfig(cctl_domain="finite")
        for tree in TREES4[::25]:
            route = _leftmost(tree)
            assert eval_path(h, tree, route, 0, cfg) == eval_path(b, tree, route, 0, cfg)


def _subformulas(f):
    yield f
    for c in tl.children(f):
        yield from _subformulas(c)


def _leftmost(tree):
    route = [tree.root]
    while tree.children[route[-1]]:
        route.append(tree.children[route[-1]][0])
    return route


@given(seeds, st.integers(0, 200), st.sampled_from(["msol", "gmc", "cctl", "stl"]))
def test_error_spans_inside_text(seed, where, logic):
    rng = rng_of(seed)
    text = show({"msol": lambda: random_msol(rng, 4),
                 "gmc": lambda: random_gmc(rng, 4),
                 "cctl": lambda: random_temporal(rng, 4),
                 "stl": lambda: random_temporal(rng, 4, semilattice=True)}[logic]())
    i = where % (len(text) + 1)
    mutated = text[:i] + rng.choice("()&|.?<{") + text[i + 1:]
    try:
        parse(mutated, logic)
    except ParseError as e:
        assert 0 <= e.span.start <= e.span.end <= len(mutated)
        assert e.span.line >= 1 and e.span.column >= 1


# models ------------------------------------------------------------------------------

def _by_route(tree):
    out = {(): tree.root}
    for v in tree.order:
        for i, c in enumerate(tree.children[v]):
            out[_route(tree, v) + (i,)] = c
    return out


def _route(tree, v):
    steps = []
    while tree.parent[v] is not None:
        p = tree.parent[v]
        steps.append(tree.children[p].index(v))
        v = p
    return tuple(reversed(steps))


@given(st.sampled_from(sorted(KRIPKE)), st.integers(1, 3), st.integers(0, 3))
def test_unfold_prefix_stable(family, n, depth):
    k = KRIPKE[family](n)
    small, big = unfold(k, depth), unfold(k, depth + 1)
    a, b = _by_route(small), _by_route(big)
    assert set(a) == {r for r in b if len(r) <= depth}
    for r, v in a.items():
        assert small.labels[v] == big.labels[b[r]]


@given(st.sampled_from(sorted(KRIPKE)), st.integers(1, 4))
def test_unfolded_degrees_follow_structure(family, n):
    k = KRIPKE[family](n)
    tree = unfold(k, 2)
    for v in range(tree.n):
        if tree.depth[v] < 2:
            assert len(tree.children[v]) == len(k.succ[tree.origin[v]])


@given(st.integers(1, 4), st.integers(1, 6))
def test_na_has_empty_spine(n, depth):
    tree = gen_na(n, depth)
    frontier = [tree.root]
    for _ in range(depth):
        frontier = [c for v in frontier for c in tree.children[v] if not tree.labels[c]]
    assert frontier


@given(st.integers(1, 4))
def test_a_paths_reach_a(n):
    tree = gen_a(n, n + 1)
    for v in range(tree.n):
        if not tree.children[v]:
            seen, u = False, v
            while u is not None:
                seen = seen or "a" in tree.labels[u]
                u = tree.parent[u]
            assert seen


# evaluators ----------------------------------------------------------------------------

@given(seeds, tree5)
def test_kleene_convergence(seed, tree):
    rng = rng_of(seed)
    f = random_positive_gmc(rng, (), 5)
    stats = {}
    eval_gmc(f, tree, stats=stats)
    assert stats.get("max_rounds", 0) <= tree.n + 1


@given(seeds, tree5)
def test_graph_tree_agreement(seed, tree):
    rng = rng_of(seed)
    f = random_positive_gmc(rng, ("Z",), 4)
    alpha = random_alpha(rng, tree, ("Z",))
    assert eval_gmc_graph(f, KripkeStructure.from_tree(tree), alpha) == eval_gmc(f, tree, alpha)


@given(seeds, tree5)
def test_mode_coherence(seed, tree):
    f = random_msol(rng_of(seed), 4, fo=(), so=())
    full = eval_msol(f, tree, cfg=EvalConfig(QuantMode.FULL))
    assert eval_msol(f, tree, cfg=EvalConfig(QuantMode.WEAK)) == full


@given(seeds, tree5, st.integers(0, 3))
def test_graded_duality(seed, tree, k):
    rng = rng_of(seed)
    f = random_positive_gmc(rng, ("Z",), 3)
    alpha = random_alpha(rng, tree, ("Z",))
    box = eval_gmc(g.Box(k, f), tree, alpha)
    dia = eval_gmc(g.Diamond(k, g.Not(f)), tree, alpha)
    assert box == tree.full ^ dia


@given(seeds, tree4)
def test_msol_fo_agrees_with_brute_force(seed, tree):
    f = random_msol(rng_of(seed), 4, fo=("x",), so=())
    den = denot_msol(f, "x", tree)
    for w in range(tree.n):
        assert bool(den >> w & 1) == eval_msol(f, tree, {"x": w})


# translators -------------------------------------------------------------------------------

@given(seeds, tree4)
def test_sentence_preservation_and_agreement(seed, tree):
    rng = rng_of(seed)
    theta = random_theta(rng, (), (), 3)
    out = osgmc_to_mtl(theta, "x")
    fo, so = free_vars(out.formula)
    assert fo <= {"x"} and not so
    cfg = EvalConfig(out.mode_requirement)
    assert denot_msol(out.formula, "x", tree, None, cfg) == eval_gmc(theta, tree)


@given(seeds, tree4)
def test_weak_translation_agreement(seed, tree):
    rng = rng_of(seed)
    theta = random_theta(rng, (), (), 2)
    try:
        out = osafgmc_to_wmtl(theta, "x")
    except TranslationError:
        assume(False)
    assert free_vars(out.formula)[0] <= {"x"}
    cfg = EvalConfig(out.mode_requirement)
    assert denot_msol(out.formula, "x", tree, None, cfg) == eval_gmc(theta, tree)


@given(seeds)
def test_cctl_translation_linear(seed):
    f = random_temporal(rng_of(seed), 6, max_grade=3)
    out = cctl_to_mpl(f)
    assert free_vars(out.formula)[0] <= {"x"}
    assert {k.value for k in m.so_kinds(out.formula)} <= {"P"}
    assert m.size(out.formula) <= 30 * tl.cctl_size(f)


@given(seeds, tree4)
def test_cctl_translation_agreement(seed, tree):
    f = random_temporal(rng_of(seed), 3, max_grade=2)
    out = cctl_to_mpl(f)
    assert denot_msol(out.formula, "x", tree) == cctl_denotation(f, tree)


@given(tree5, st.data())
def test_maxsubtree_is_component(tree, data):
    sets = [s for s in tree.domain(QuantKind.T)]
    x_set = data.draw(st.sampled_from(sets))
    v = data.draw(st.sampled_from(members(x_set)))
    f = stdlib("maxsubtree", "Y", "X", "v")
    witnesses = [y for y in range(1 << tree.n)
                 if eval_msol(f, tree, {"v": v}, {"X": x_set, "Y": y})]
    assert witnesses == [restrict_component(x_set, v, tree)]


# lab -------------------------------------------------------------------------------------

@given(st.integers(0, 1000))
def test_reports_deterministic(seed):
    corpus = Corpus.enumerate(3, ("a",))
    a = lemma_suite("monotonicity", corpus, 20, seed).to_json()
    b = lemma_suite("monotonicity", corpus, 20, seed).to_json()
    a.pop("elapsed_ms"), b.pop("elapsed_ms")
    assert a == b


@given(seeds)
def test_counterexample_reproduces(seed):
    rng = rng_of(seed)
    lhs = random_positive_gmc(rng, (), 3)
    rhs = random_positive_gmc(rng, (), 3)
    report = equiv_check((lhs, Binding("gmc")), (rhs, Binding("gmc")),
                         Corpus.enumerate(3, ("a", "q")))
    if report.ok:
        return
    from mtlkit.models import load_model
    cex = report.counterexample
    tree = load_model(cex["model"])
    node = cex["node"]
    assert bool(eval_gmc(lhs, tree) >> node & 1) == cex["lhs"]
    assert bool(eval_gmc(rhs, tree) >> node & 1) == cex["rhs"]
    assert cex["lhs"] != cex["rhs"]
