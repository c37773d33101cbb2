import pytest
from hypothesis import given, strategies as st

from mtlkit.bits import mask_of
from mtlkit.concrete import parse
from mtlkit.evaluators import (EvalConfig, EvalError, VarRoles, cctl_denotation, denot_msol,
                               eval_cctl, eval_gmc, eval_gmc_graph, eval_msol, eval_path,
                               eval_stl, one_step_sim, restrict_assignment, restrict_component)
from mtlkit.models import (KripkeStructure, chain, complete_binary, enumerate_trees, gen_d,
                           gen_nd)
from mtlkit.syntax.msol import QuantMode
from mtlkit.translators import stdlib

CLIQUE = KripkeStructure.build([(), ()], [(0, 0), (0, 1), (1, 0), (1, 1)])
LOOP = KripkeStructure.build([()], [(0, 0)])
STAR = complete_binary(1)
SMALL = list(enumerate_trees(4, ("a", "q")))


def cctl(text):
    return parse(text, "cctl")


class TestMsol:
    def test_singleton_subtree_exists(self, msol, binary2):
        assert eval_msol(msol("ET X. E x. x in X"), binary2)

    def test_density_false_on_finite_trees(self, binary2):
        f = stdlib("density_mtl")
        for tree in (binary2, chain(4), STAR):
            assert not eval_msol(f, tree)

    def test_root_exists(self, msol):
        for tree in SMALL[:40]:
            assert eval_msol(msol("E x. A y. x <= y"), tree)

    def test_atom_denotation(self, msol):
        tree = chain(3, {0: {"a"}, 2: {"a"}}, ("a",))
        assert denot_msol(msol("P_a(x)"), "x", tree) == 0b101

    def test_leaves(self, msol, binary2):
        leaves = mask_of(v for v in range(binary2.n) if not binary2.children[v])
        assert denot_msol(msol("A y. !(x < y)"), "x", binary2) == leaves

    def test_unbound_variable(self, msol, binary2):
        with pytest.raises(EvalError):
            eval_msol(msol("x in X"), binary2, {"x": 0})

    def test_valuations(self, msol, binary2):
        assert eval_msol(msol("x in X"), binary2, {"x": 1}, {"X": [1, 2]})
        assert not eval_msol(msol("x < y"), binary2, {"x": 1, "y": 2})

    def test_weak_and_coweak(self, msol):
        f = msol("ES X. A x. x in X")
        tree = chain(2)
        assert eval_msol(f, tree, cfg=EvalConfig(QuantMode.WEAK))
        assert not eval_msol(f, tree, cfg=EvalConfig(QuantMode.COWEAK))

    def test_horizon_required_for_infinite_approx(self):
        with pytest.raises(EvalError):
            EvalConfig(cctl_domain="infinite-approx")


class TestGmc:
    def test_density_empties_on_binary(self, binary2):
        assert eval_gmc(stdlib("phi_den_gmc"), binary2) == 0

    def test_af_on_chain(self, chain3_a_leaf):
        assert eval_gmc(stdlib("af_a_gmc"), chain3_a_leaf) == 0b111

    def test_until_matches_cctl(self, gmc):
        f, g = gmc("mu X. q | (a & <1> X)"), cctl("E (a U q)")
        for tree in SMALL:
            assert eval_gmc(f, tree) == cctl_denotation(g, tree)

    def test_density_on_clique(self):
        assert eval_gmc_graph(stdlib("phi_den_gmc"), CLIQUE) == 0b11

    def test_density_on_loop(self):
        assert eval_gmc_graph(stdlib("phi_den_gmc"), LOOP) == 0

    def test_graph_evaluation_agrees_on_trees(self, gmc):
        f = gmc("nu X. mu Y. (a & <1> X) | (q & [1] Y)")
        for tree in SMALL[::7]:
            assert eval_gmc_graph(f, KripkeStructure.from_tree(tree)) == eval_gmc(f, tree)

    def test_free_variable_assignment(self, gmc, binary2):
        assert eval_gmc(gmc("<2> X"), binary2, {"X": [1, 2]}) == 0b1

    def test_kleene_rounds_bounded(self, gmc):
        stats = {}
        tree = chain(6)
        eval_gmc(gmc("mu X. [1] X"), tree, stats=stats)
        assert stats["max_rounds"] <= tree.n + 1

    def test_negative_bound_variable_rejected(self, gmc, binary2):
        with pytest.raises(EvalError):
            eval_gmc(gmc("mu X. !X"), binary2)


class TestCctl:
    def test_two_children(self):
        for depth in (1, 2, 3):
            tree = complete_binary(depth)
            assert eval_cctl(cctl("D{2} tt"), tree, tree.root)

    def test_next_on_chain(self):
        tree = chain(2, {1: {"a"}}, ("a",))
        assert eval_cctl(cctl("E (X a)"), tree, 0)

    @pytest.mark.parametrize("depth", [1, 2])
    def test_density_families(self, depth):
        d, nd = gen_d(2, depth), gen_nd(2, depth)
        assert eval_cctl(cctl("D{4} tt"), d, d.root)
        assert not eval_cctl(cctl("D{4} tt"), nd, nd.root)

    def test_path_domains(self):
        tree = chain(3, {1: {"a"}}, ("a",))
        f = cctl("A G !a")
        # the one-node path avoids a; the maximal one does not
        assert not eval_cctl(f, tree, 0, EvalConfig(cctl_domain="all"))
        assert not eval_cctl(cctl("E G !a"), tree, 0, EvalConfig(cctl_domain="maximal"))
        assert eval_cctl(cctl("E G !a"), tree, 0, EvalConfig(cctl_domain="all"))

    def test_eval_path_rejects_bad_path(self, binary2):
        with pytest.raises(EvalError):
            eval_path(cctl("a"), binary2, [0, 3])

    def test_node_out_of_range(self, binary2):
        with pytest.raises(EvalError):
            eval_cctl(cctl("a"), binary2, 99)

    @given(st.integers(0, len(SMALL) - 1), st.integers(0, 3))
    def test_graded_duality(self, i, k):
        tree = SMALL[i]
        dia = cctl_denotation(cctl(f"D{{{k}}} !a"), tree)
        box = cctl_denotation(cctl(f"!D{{{k}}} !a"), tree)
        assert dia ^ box == tree.full


def stl(text):
    return parse(text, "stl")


class TestStl:
    relaxed = EvalConfig(relax_nonblocking=True)

    def test_star_until_witnessed_by_root(self):
        assert eval_stl(stl("((D{1} tt) UU{ff} !(D{1} tt))"), STAR, STAR.full, self.relaxed)

    def test_star_until_blocked_between(self):
        assert not eval_stl(stl("((D{2} tt) UU{ff} !(D{1} tt))"), STAR, STAR.full, self.relaxed)

    def test_since_grows_upward(self):
        assert eval_stl(stl("(tt SS{ff} (D{2} tt))"), STAR, [0, 1], self.relaxed)

    def test_single_node_relaxed(self):
        tree = chain(1)
        assert not eval_stl(stl("(tt UU{tt} tt)"), tree, 1, self.relaxed)
        assert eval_stl(stl("(ff RR{tt} ff)"), tree, 1, self.relaxed)

    def test_no_nonblocking_candidates_on_finite_trees(self):
        assert not eval_stl(stl("(tt UU{ff} tt)"), STAR, STAR.full)
        assert eval_stl(stl("(ff RR{ff} ff)"), STAR, STAR.full)

    def test_rejects_non_subtree(self, binary2):
        with pytest.raises(EvalError):
            eval_stl(stl("a"), binary2, [1, 2])


class TestRestrict:
    def test_gap_breaks_component(self):
        assert restrict_component(0b101, 0, chain(3)) == 0b001

    def test_whole_tree(self, binary2):
        assert restrict_component(binary2.full, 0, binary2) == binary2.full

    def test_contiguous_pair(self, binary2):
        c1 = binary2.children[0][0]
        leaf = binary2.children[c1][0]
        region = (1 << c1) | (1 << leaf)
        assert restrict_component(region, c1, binary2) == region

    def test_node_outside_region(self, binary2):
        with pytest.raises(EvalError):
            restrict_component(0b1, 1, binary2)

    @pytest.mark.parametrize("zero,one,expected", [
        ({"X"}, set(), "root"),
        (set(), {"X"}, "kids"),
        ({"X"}, {"X"}, "both"),
    ])
    def test_assignment_cases(self, binary2, zero, one, expected):
        kids = binary2.child_mask[0]
        want = {"root": 1, "kids": kids, "both": 1 | kids}[expected]
        out = restrict_assignment({"X": binary2.full}, 1, VarRoles(zero, one), binary2)
        assert out["X"] == want

    def test_simulation_reflexive_and_top(self, binary2):
        roles = VarRoles({"X"}, {"X"})
        alpha = {"X": 0b0110}
        assert one_step_sim(alpha, alpha, 0b1, roles, binary2)
        assert one_step_sim(alpha, {"X": binary2.full}, 0b1, roles, binary2)
        assert not one_step_sim(alpha, {"X": 0}, 0b1, roles, binary2)
