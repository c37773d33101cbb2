import json

import pytest
from hypothesis import given, strategies as st

from mtlkit.models import (KripkeStructure, PathStats, TreeModel, chain, compat, compat_stats, complete_binary,
                           density_oracle, enumerate_chains, enumerate_trees, gen_a, gen_d,
                           gen_na, gen_nd, kripke_a, kripke_d, kripke_na, kripke_nd, load_model,
                           path_stats, subtrees, unfold)
from mtlkit.syntax.msol import QuantKind, QuantMode

CLIQUE = KripkeStructure.build([(), ()], [(0, 0), (0, 1), (1, 0), (1, 1)])
LOOP = KripkeStructure.build([()], [(0, 0)])


def test_chain_with_labelled_leaf(chain3_a_leaf):
    t = chain3_a_leaf
    assert t.n == 3 and t.is_chain()
    assert t.labels[2] == {"a"} and not t.labels[0]


def test_single_node_chain():
    t = chain(1)
    assert t.n == 1 and t.root == 0 and t.children[0] == ()


@pytest.mark.parametrize("depth,nodes", [(0, 1), (1, 3), (2, 7)])
def test_complete_binary_size(depth, nodes):
    assert complete_binary(depth).n == nodes


def test_unfold_self_loop():
    t = unfold(LOOP, 2)
    assert t.is_chain() and t.n == 3
    assert [t.frontier[v] for v in t.order] == [False, False, True]


def test_unfold_clique_is_complete_binary():
    t = unfold(CLIQUE, 2)
    assert t.n == 7
    assert all(len(t.children[v]) == 2 for v in t.order if t.depth[v] < 2)


@pytest.mark.parametrize("kripke,marked", [(LOOP, True), (KripkeStructure.build([()], []), False)])
def test_unfold_depth_zero(kripke, marked):
    t = unfold(kripke, 0)
    assert t.n == 1 and t.frontier[0] is marked


def test_tree_rejects_two_roots():
    with pytest.raises(ValueError):
        TreeModel.build([None, None])


def test_tree_rejects_cycle():
    with pytest.raises(ValueError):
        TreeModel.build([None, 2, 1])


def test_json_round_trip(binary2):
    data = json.loads(json.dumps(binary2.to_json()))
    assert load_model(data) == binary2
    k = load_model(json.dumps(CLIQUE.to_json()))
    assert k == CLIQUE


class TestEnumeration:
    def test_one_node_labellings(self):
        assert sum(1 for _ in enumerate_trees(1, ("a",))) == 2

    @pytest.mark.parametrize("k,count", [(2, 2), (3, 4), (4, 9)])
    def test_ordered_shapes(self, k, count):
        assert sum(1 for _ in enumerate_trees(k)) == count

    @pytest.mark.parametrize("k,count", [(3, 4), (4, 8), (5, 17)])
    def test_unordered_shapes(self, k, count):
        # rooted unordered trees with 1..5 nodes: 1, 1, 2, 4, 9
        assert sum(1 for _ in enumerate_trees(k, unordered=True)) == count

    def test_unordered_is_subset_of_ordered(self):
        canon = {t.to_json().__repr__() for t in enumerate_trees(4, ("a",), unordered=True)}
        assert len(canon) == sum(1 for _ in enumerate_trees(4, ("a",), unordered=True))

    def test_chains(self):
        assert sum(1 for _ in enumerate_chains(3, ("a",))) == 2 + 4 + 8


class TestSubtrees:
    def test_paths_of_two_chain(self):
        assert set(subtrees(chain(2), QuantKind.P)) == {frozenset({0}), frozenset({1}),
                                                        frozenset({0, 1})}

    def test_trees_of_cherry(self):
        assert len(list(subtrees(complete_binary(1), QuantKind.T))) == 6

    def test_all_subsets(self):
        assert len(list(subtrees(complete_binary(1), QuantKind.S))) == 8

    def test_coweak_on_unmarked_finite_tree(self, binary2):
        assert list(subtrees(binary2, QuantKind.T, QuantMode.COWEAK)) == []

    @given(st.integers(0, 200))
    def test_tree_sets_are_connected(self, i):
        trees = list(enumerate_trees(4, ()))
        t = trees[i % len(trees)]
        for s in subtrees(t, QuantKind.T):
            tops = [v for v in s if t.parent[v] not in s]
            assert len(tops) == 1


class TestFamilies:
    def test_density_oracle_basics(self):
        assert density_oracle(CLIQUE)
        assert not density_oracle(LOOP)

    @pytest.mark.parametrize("n", [2, 3])
    def test_density_separates_families(self, n):
        assert density_oracle(kripke_d(n)) and not density_oracle(kripke_nd(n))

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_root_degrees(self, n):
        assert len(gen_nd(n, 1).children[0]) == n * (n - 1) + 1
        assert len(gen_d(n, 1).children[0]) == n * (n - 1) + 2
        assert len(gen_a(n, 1).children[0]) == n
        assert len(gen_na(n, 1).children[0]) == n + 1

    def test_kripke_forms_unfold_to_generators(self):
        assert unfold(kripke_a(2), 3) == gen_a(2, 3)
        assert unfold(kripke_na(2), 3) == gen_na(2, 3)


class TestPathStats:
    def _spine(self, tree, empty, a_len):
        """Some root path with ``empty`` unlabelled nodes, then ``a_len`` a-nodes."""
        pattern = [False] * empty + [True] * a_len
        stack = [(tree.root,)]
        while stack:
            p = stack.pop()
            if ("a" in tree.labels[p[-1]]) != pattern[len(p) - 1]:
                continue
            if len(p) == len(pattern):
                return p
            stack.extend(p + (c,) for c in tree.children[p[-1]])
        raise LookupError("no such path")

    def test_stats_by_definition(self):
        t = gen_na(4, 8)
        s = path_stats(t, self._spine(t, 4, 2), kripke_na(4))
        assert (s.n_empty, s.n_a, s.d_a) == (4, 2, 0)

    def test_identical_paths_compatible(self):
        t = gen_na(3, 5)
        p = self._spine(t, 3, 1)
        assert compat(3, t, p, p)

    def test_long_empty_parts_merge_at_h(self):
        assert compat_stats(3, PathStats(3, 1, 0), PathStats(4, 1, 0))
        assert not compat_stats(4, PathStats(3, 1, 0), PathStats(4, 1, 0))
        assert not compat_stats(3, PathStats(3, 1, 0), PathStats(3, 2, 0))

    def test_rejects_non_path(self, binary2):
        with pytest.raises(ValueError):
            path_stats(binary2, (0, 3))
