import pytest

from mtlkit.concrete import parse, show
from mtlkit.evaluators import (EvalConfig, cctl_denotation, denot_msol, eval_gmc, eval_msol,
                               restrict_component, stl_denotation)
from mtlkit.models import chain, complete_binary, enumerate_chains, enumerate_trees
from mtlkit.syntax import msol as m
from mtlkit.syntax.msol import QuantMode
from mtlkit.translators import (TranslationError, cctl_to_mpl, mtl_chain_to_fo, mtl_to_cowmtl,
                                osafgmc_to_wmtl, osgmc_to_mtl, stdlib, stl_to_mtl)

TREES4 = list(enumerate_trees(4, ("a", "q"), unordered=True))


def denot(out, tree, horizon=False):
    cfg = EvalConfig(mode=out.mode_requirement, horizon=horizon)
    return denot_msol(out.formula, out.anchor, tree, None, cfg)


class TestStdlib:
    def test_child(self, binary2):
        f = stdlib("child", "x", "y")
        for u in range(binary2.n):
            for v in range(binary2.n):
                assert eval_msol(f, binary2, {"x": u, "y": v}) == (binary2.parent[v] == u)

    def test_fixpoint_entries(self):
        assert show(stdlib("phi_den_gmc")) == "nu X. mu Y. (<2> X | <1> Y)"
        assert stdlib("af_a_gmc") == parse("mu X. a | [1] X", "gmc")

    def test_unknown_entry(self):
        with pytest.raises(KeyError):
            stdlib("nope")

    def test_arity(self):
        with pytest.raises(TypeError):
            stdlib("child", "x")

    def test_maxsubtree_matches_restriction(self):
        tree = chain(3)
        f = stdlib("maxsubtree", "Y", "X", "v")
        x_set = 0b101
        for y_set in range(8):
            holds = eval_msol(f, tree, {"v": 0}, {"X": x_set, "Y": y_set})
            assert holds == (y_set == restrict_component(x_set, 0, tree))

    def test_path_and_tree_predicates(self, binary2):
        assert eval_msol(stdlib("path", "X"), binary2, None, {"X": [0, 1, 3]})
        assert not eval_msol(stdlib("path", "X"), binary2, None, {"X": [0, 1, 2]})
        assert eval_msol(stdlib("tree", "X"), binary2, None, {"X": [0, 1, 2]})
        assert not eval_msol(stdlib("tree", "X"), binary2, None, {"X": [1, 2]})


class TestGmcTranslation:
    def test_atom(self, gmc):
        out = osgmc_to_mtl(gmc("a"), "x")
        assert out.formula == m.Atom("a", "x")

    @pytest.mark.parametrize("text", [
        "nu X. mu Y. (<2> X) | (<1> Y)",
        "mu X. q | (a & <1> X)",
        "nu X. a & [1] X",
        "<2> (mu X. a | <1> X)",
    ])
    def test_table_one(self, gmc, text):
        f = gmc(text)
        out = osgmc_to_mtl(f, "x")
        assert out.mode_requirement is QuantMode.FULL
        assert {k.value for k in m.so_kinds(out.formula)} <= {"T"}
        for tree in TREES4:
            assert denot(out, tree) == eval_gmc(f, tree)

    def test_density_denotation_empty(self, binary2):
        out = osgmc_to_mtl(stdlib("phi_den_gmc"), "x")
        assert denot(out, binary2) == 0

    @pytest.mark.parametrize("text", [
        "mu X. a | [1] X",
        "mu X. ff",
        "nu X. q | (a & [2] X)",
        "mu X. mu Y. (a & <1> X) | (q & <1> Y)",
    ])
    def test_table_two(self, gmc, text):
        f = gmc(text)
        out = osafgmc_to_wmtl(f, "x")
        assert out.mode_requirement is QuantMode.WEAK
        for tree in TREES4:
            assert denot(out, tree) == eval_gmc(f, tree)

    def test_rejects_outside_fragment(self, gmc):
        with pytest.raises(TranslationError):
            osgmc_to_mtl(gmc("mu X. <1> <1> X"), "x")

    def test_weak_rejects_alternation(self, gmc):
        with pytest.raises(TranslationError):
            osafgmc_to_wmtl(gmc("nu X. mu Y. (<2> X) | (<1> Y)"), "x")

    def test_fresh_names_avoid_input(self, gmc):
        out = osgmc_to_mtl(gmc("mu X_1. a | <1> X_1"), "x")
        assert "x" not in out.fresh_vars
        assert len(set(out.fresh_vars)) == len(out.fresh_vars)


class TestTemporalTranslation:
    @pytest.mark.parametrize("text", ["E (a U q)", "A F q", "D{2} (E X a)", "A (a R q)"])
    @pytest.mark.parametrize("domain", ["all", "finite", "maximal"])
    def test_cctl(self, text, domain):
        f = parse(text, "cctl")
        out = cctl_to_mpl(f, "x", domain)
        assert {k.value for k in m.so_kinds(out.formula)} <= {"P"}
        cfg = EvalConfig(cctl_domain=domain)
        for tree in TREES4:
            assert denot(out, tree) == cctl_denotation(f, tree, cfg)

    def test_counting_at_binary_roots(self):
        out = cctl_to_mpl(parse("D{2} tt", "cctl"))
        for depth in (1, 2):
            assert denot(out, complete_binary(depth)) & 1

    def test_cctl_rejects_semilattice(self):
        with pytest.raises(TranslationError):
            cctl_to_mpl(parse("(a UU{tt} q)", "stl"))

    @pytest.mark.parametrize("text", ["(a UU{tt} q)", "(q RR{a} a)", "(a SS{tt} q)",
                                      "(a BB{q} q)"])
    def test_stl_relaxed(self, text):
        f = parse(text, "stl")
        out = stl_to_mtl(f, relax_nonblocking=True)
        cfg = EvalConfig(relax_nonblocking=True)
        for tree in TREES4:
            assert denot(out, tree) == stl_denotation(f, tree, cfg)

    def test_stl_rejects_path_formula(self):
        with pytest.raises(TranslationError):
            stl_to_mtl(parse("X a", "stl"))


class TestChains:
    def test_first_order_unchanged(self, msol):
        f = msol("E x. P_a(x)")
        assert mtl_chain_to_fo(f) is f
        assert mtl_to_cowmtl(f).formula == f

    def test_interval_shape(self, msol):
        out = mtl_chain_to_fo(msol("ET X. E x. x in X"))
        assert show(out) == ("((E x_1. E x. x_1 <= x) | (E x_1. E x_2. "
                             "(x_1 <= x_2 & (E x. (x_1 <= x & x <= x_2)))))")
        assert not m.so_kinds(out)

    @pytest.mark.parametrize("text", [
        "ET X. A x. (x in X -> P_a(x))",
        "AT X. E x. (x in X & !P_a(x))",
        "ET X. ET Y. (A x. (x in X -> x in Y) & E y. (y in Y & !y in X))",
    ])
    def test_chain_agreement(self, msol, text):
        f = msol(text)
        out = mtl_chain_to_fo(f)
        for tree in enumerate_chains(5, ("a",)):
            assert eval_msol(out, tree) == eval_msol(f, tree)

    def test_only_tree_quantifiers(self, msol):
        with pytest.raises(TranslationError):
            mtl_chain_to_fo(msol("ES X. E x. x in X"))

    def test_cow_mode(self, msol):
        out = mtl_to_cowmtl(msol("ET X. A x. x in X"))
        assert out.mode_requirement is QuantMode.COWEAK
