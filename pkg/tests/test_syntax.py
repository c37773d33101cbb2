import pytest

from mtlkit.concrete import parse, show
from mtlkit.models import enumerate_trees
from mtlkit.evaluators import eval_gmc
from mtlkit.syntax import free_vars
from mtlkit.syntax import gmc as g
from mtlkit.syntax import temporal as tl


def test_free_vars_of_closed_sentence(msol):
    assert free_vars(msol("E x. P_a(x)")) == (frozenset(), frozenset())


def test_free_vars_of_membership(msol):
    assert free_vars(msol("x in X")) == ({"x"}, {"X"})


def test_free_vars_of_fixpoint_body(gmc):
    assert free_vars(gmc("nu X. <1> Y")) == (frozenset(), {"Y"})


class TestOneStep:
    def test_until_encoding_is_theta(self, gmc):
        assert g.check_one_step(gmc("mu X. q | (a & <1> X)")).kind == "theta"

    def test_zero_role_variable_under_modality_rejected(self, gmc):
        verdict = g.check_one_step(gmc("<1> Y"), zero={"Y"})
        assert verdict.kind == "reject"
        assert verdict.path == (0,)

    def test_two_nested_modalities_rejected(self, gmc):
        assert not g.check_one_step(gmc("<1> [1] Z"), one={"Z"}).ok

    def test_one_role_variable_under_one_modality_ok(self, gmc):
        assert g.check_one_step(gmc("<1> Z"), one={"Z"}).kind == "phi"

    def test_negative_occurrence_rejected(self, gmc):
        assert not g.check_one_step(gmc("mu X. !X")).ok


class TestAlternation:
    @pytest.mark.parametrize("text,expected", [
        ("mu X. a | [1] X", True),
        ("nu X. mu Y. (<2> X) | (<1> Y)", False),
        ("tt", True),
        ("mu X. (nu Y. a & <1> Y) | <1> X", True),
    ])
    def test_examples(self, gmc, text, expected):
        assert g.check_alternation_free(g.pnf(gmc(text))) is expected

    def test_requires_positive_normal_form(self, gmc):
        with pytest.raises(ValueError):
            g.check_alternation_free(gmc("!(a & b)"))


class TestPnf:
    def test_negated_tt(self, gmc):
        assert g.pnf(gmc("!tt")) == g.FF()

    def test_double_negation(self, gmc):
        assert g.pnf(gmc("!!a")) == g.Prop("a")

    def test_modal_dual(self, gmc):
        assert show(g.pnf(gmc("!(a & <1> X)"))) == show(gmc("!a | [1] !X"))

    def test_equivalent_on_small_trees(self, gmc):
        f = gmc("!(mu X. a | (q & <2> X))")
        p = g.pnf(f)
        assert g.is_pnf(p)
        for tree in enumerate_trees(4, ("a", "q")):
            assert eval_gmc(f, tree) == eval_gmc(p, tree)

    def test_bound_variable_under_negation(self, gmc):
        with pytest.raises(g.PolarityError):
            g.pnf(gmc("mu X. !X"))


class TestSubst:
    def test_replaces_free_occurrence(self, gmc):
        assert g.subst_var(gmc("<1> X"), "X", gmc("!X")) == gmc("<1> !X")

    def test_bound_occurrence_untouched(self, gmc):
        f = gmc("mu X. <1> X")
        assert g.subst_var(f, "X", gmc("a")) == f

    def test_capture_avoided(self, gmc):
        out = g.subst_var(gmc("X & mu Y. X"), "X", gmc("Y"))
        assert g.free_vars(out) == {"Y"}
        assert isinstance(out.right, g.Mu) and out.right.var != "Y"


class TestSuppress:
    def test_down_worked_example(self, gmc):
        f = gmc("(mu Y. (a | X)) & <1> (X | Y)")
        assert g.suppress(f, "X", "down") == gmc("(mu Y. (a | ff)) & <1> (X | Y)")

    def test_up_worked_example(self, gmc):
        f = gmc("X & (mu X. (a | X)) & [2] X")
        assert g.suppress(f, "X", "up") == gmc("tt & (mu X. (a | X)) & [2] X")

    def test_no_occurrence(self, gmc):
        assert g.suppress(gmc("a"), "X", "down") == gmc("a")

    def test_bad_direction(self, gmc):
        with pytest.raises(ValueError):
            g.suppress(gmc("X"), "X", "sideways")


class TestMergeLfps:
    def test_block_of_two(self, gmc):
        var, body = g.merge_lfps(gmc("mu X1. mu X2. (X1 | <1> X2)"))
        assert body == g.Or(g.Var(var), g.Diamond(1, g.Var(var)))

    def test_merged_block_agrees(self, gmc):
        f = gmc("mu X1. mu X2. (a & <1> X1) | (q & <1> X2)")
        var, body = g.merge_lfps(f)
        merged = g.Mu(var, body)
        for tree in enumerate_trees(4, ("a", "q")):
            assert eval_gmc(f, tree) == eval_gmc(merged, tree)

    def test_without_occurrence(self, gmc):
        assert g.merge_lfps(gmc("mu X. a"))[1] == g.Prop("a")

    def test_renames(self, gmc):
        var, body = g.merge_lfps(gmc("mu X. <1> X"))
        assert body == g.Diamond(1, g.Var(var))


class TestCctlSize:
    def test_grade_counts_unary(self):
        assert tl.cctl_size(parse("D{2} a", "cctl")) == 4

    def test_atom(self):
        assert tl.cctl_size(tl.Prop("a")) == 1

    def test_conjunction(self):
        assert tl.cctl_size(parse("a & b", "cctl")) == 3


class TestBalance:
    def test_until_of_atoms_balanced(self):
        assert tl.is_balanced(parse("E (a U b)", "cctl").body)

    def test_unequal_sides_rebalanced(self):
        f = parse("E ((a & b) U c)", "cctl").body
        assert not tl.is_balanced(f)
        fixed = tl.balance(f)
        assert tl.is_balanced(fixed)
        assert tl.cctl_size(fixed.left) == tl.cctl_size(fixed.right)

    def test_balance_preserves_meaning(self):
        from mtlkit.evaluators import EvalConfig, eval_path
        f = parse("E ((a & b) U c)", "cctl").body
        fixed = tl.balance(f)
        cfg = EvalConfig(cctl_domain="finite")
        for tree in enumerate_trees(4, ("a", "b", "c")):
            node = 0
            path = [node]
            while tree.children[node]:
                node = tree.children[node][0]
                path.append(node)
            assert eval_path(f, tree, path, 0, cfg) == eval_path(fixed, tree, path, 0, cfg)
