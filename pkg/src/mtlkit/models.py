"""Finite labelled trees, Kripke multigraphs and the model families.

Node sets are int bitmasks throughout (see ``mtlkit.bits``).
"""
import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .bits import mask_of, members
from .syntax.msol import QuantKind, QuantMode

FRONTIER = "_frontier"


@dataclass(frozen=True, eq=True)
class TreeModel:
    """A rooted tree over dense ids ``0..n-1``; children keep their order.

    ``classes`` and ``origin`` are optional bookkeeping for unfolded
    families: the family class name and Kripke state behind each node.
    """
    ap: tuple
    parent: tuple
    labels: tuple
    frontier: tuple
    classes: tuple = None
    origin: tuple = None

    def __post_init__(self):
        n = len(self.parent)
        if n == 0:
            raise ValueError("a tree needs at least one node")
        if len(self.labels) != n or len(self.frontier) != n:
            raise ValueError("per-node arrays differ in length")
        roots = [v for v, p in enumerate(self.parent) if p is None]
        if len(roots) != 1:
            raise ValueError("exactly one root required")
        for v, p in enumerate(self.parent):
            if p is not None and not 0 <= p < n:
                raise ValueError(f"node {v} has unknown parent {p}")
        if len(self.order) != n:
            raise ValueError("parent links contain a cycle")
        extra = set().union(*self.labels) - set(self.ap)
        if extra:
            raise ValueError(f"labels outside AP: {sorted(extra)}")

    @classmethod
    def build(cls, parent, labels=None, ap=None, frontier=None, classes=None, origin=None):
        n = len(parent)
        labels = tuple(frozenset(x) for x in (labels or [()] * n))
        if ap is None:
            ap = sorted(set().union(*labels))
        return cls(tuple(sorted(ap)), tuple(parent), labels,
                   tuple(bool(x) for x in (frontier or [False] * n)),
                   tuple(classes) if classes is not None else None,
                   tuple(origin) if origin is not None else None)

    @property
    def n(self):
        return len(self.parent)

    @cached_property
    def root(self):
        return self.parent.index(None)

    @cached_property
    def children(self):
        kids = [[] for _ in self.parent]
        for v, p in enumerate(self.parent):
            if p is not None:
                kids[p].append(v)
        return tuple(tuple(k) for k in kids)

    @cached_property
    def order(self):
        """Breadth-first order from the root."""
        out = []
        kids = [[] for _ in self.parent]
        for v, p in enumerate(self.parent):
            if p is not None:
                kids[p].append(v)
        queue = deque([self.parent.index(None)])
        seen = set()
        while queue:
            v = queue.popleft()
            if v in seen:
                break
            seen.add(v)
            out.append(v)
            queue.extend(kids[v])
        return tuple(out)

    @cached_property
    def full(self):
        return (1 << self.n) - 1

    @cached_property
    def desc(self):
        """``desc[v]``: mask of ``w`` with ``v <= w`` (reflexive)."""
        d = [1 << v for v in range(self.n)]
        for v in reversed(self.order):
            for c in self.children[v]:
                d[v] |= d[c]
        return tuple(d)

    @cached_property
    def anc(self):
        a = [1 << v for v in range(self.n)]
        for v in self.order:
            p = self.parent[v]
            if p is not None:
                a[v] |= a[p]
        return tuple(a)

    @cached_property
    def child_mask(self):
        return tuple(mask_of(k) for k in self.children)

    @cached_property
    def depth(self):
        d = [0] * self.n
        for v in self.order:
            p = self.parent[v]
            if p is not None:
                d[v] = d[p] + 1
        return tuple(d)

    @cached_property
    def label_mask(self):
        out = {a: 0 for a in self.ap}
        for v, lab in enumerate(self.labels):
            for a in lab:
                out[a] |= 1 << v
        out[FRONTIER] = self.frontier_mask
        return out

    @cached_property
    def frontier_mask(self):
        return mask_of(v for v, f in enumerate(self.frontier) if f)

    def post(self, mask):
        """Children of the nodes in ``mask``."""
        out = 0
        for v in members(mask):
            out |= self.child_mask[v]
        return out

    @cached_property
    def _rooted(self):
        rooted = [None] * self.n
        for v in reversed(self.order):
            acc = [1 << v]
            for c in self.children[v]:
                acc = acc + [m | s for m in acc for s in rooted[c]]
            rooted[v] = acc
        return tuple(rooted)

    def rooted_subtrees(self, v):
        """Subtrees whose root is ``v``."""
        return self._rooted[v]

    @cached_property
    def _domains(self):
        return {}

    def domain(self, kind, mode=QuantMode.FULL, horizon=False):
        """Candidate values (masks) for a second-order variable."""
        kind, mode = QuantKind(kind), QuantMode(mode)
        key = (kind, mode, horizon)
        cache = self._domains
        if key not in cache:
            if kind is QuantKind.S:
                base = list(range(1 << self.n))
            elif kind is QuantKind.T:
                base = [m for v in range(self.n) for m in self._rooted[v]]
            else:
                base = [self.anc[w] & self.desc[u]
                        for u in range(self.n) for w in members(self.desc[u])]
            fm = self.frontier_mask
            if mode is QuantMode.WEAK and horizon:
                base = [m for m in base if not m & fm]
            elif mode is QuantMode.COWEAK:
                base = [m for m in base if m & fm] if horizon else []
            cache[key] = base
        return cache[key]

    def subtree(self, v):
        """The subtree rooted at ``v`` as a mask."""
        return self.desc[v]

    def is_chain(self):
        return all(len(k) <= 1 for k in self.children)

    def to_json(self):
        nodes = []
        for v in range(self.n):
            node = {"id": v, "parent": self.parent[v], "labels": sorted(self.labels[v]),
                    "frontier": self.frontier[v]}
            if self.classes is not None:
                node["class"] = self.classes[v]
            if self.origin is not None:
                node["state"] = self.origin[v]
            nodes.append(node)
        return {"ap": list(self.ap), "nodes": nodes}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        nodes = sorted(data["nodes"], key=lambda d: d["id"])
        if [d["id"] for d in nodes] != list(range(len(nodes))):
            raise ValueError("node ids must be dense from 0")
        classes = [d.get("class") for d in nodes]
        origin = [d.get("state") for d in nodes]
        return cls.build([d["parent"] for d in nodes], [d.get("labels", []) for d in nodes],
                         data.get("ap"), [d.get("frontier", False) for d in nodes],
                         classes if any(c is not None for c in classes) else None,
                         origin if any(o is not None for o in origin) else None)


@dataclass(frozen=True)
class KripkeStructure:
    """Finite labelled multigraph; each edge becomes a child when unfolded."""
    ap: tuple
    labels: tuple
    edges: tuple
    init: int = 0
    classes: tuple = None

    def __post_init__(self):
        m = len(self.labels)
        if not 0 <= self.init < m:
            raise ValueError("initial state out of range")
        for s, t in self.edges:
            if not (0 <= s < m and 0 <= t < m):
                raise ValueError(f"edge {(s, t)} out of range")

    @classmethod
    def build(cls, labels, edges, init=0, ap=None, classes=None):
        labels = tuple(frozenset(x) for x in labels)
        if ap is None:
            ap = sorted(set().union(*labels)) if labels else []
        return cls(tuple(sorted(ap)), labels, tuple(tuple(e) for e in edges), init,
                   tuple(classes) if classes is not None else None)

    @property
    def n(self):
        return len(self.labels)

    @cached_property
    def succ(self):
        out = [[] for _ in self.labels]
        for s, t in self.edges:
            out[s].append(t)
        return tuple(tuple(x) for x in out)

    def reachable(self):
        seen = {self.init}
        stack = [self.init]
        while stack:
            s = stack.pop()
            for t in self.succ[s]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return seen

    def to_json(self):
        states = []
        for s, lab in enumerate(self.labels):
            st = {"id": s, "labels": sorted(lab)}
            if self.classes is not None:
                st["class"] = self.classes[s]
            states.append(st)
        return {"ap": list(self.ap), "states": states,
                "edges": [list(e) for e in self.edges], "init": self.init}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        states = sorted(data["states"], key=lambda d: d["id"])
        classes = [d.get("class") for d in states]
        return cls.build([d.get("labels", []) for d in states], data["edges"],
                         data.get("init", 0), data.get("ap"),
                         classes if any(c is not None for c in classes) else None)

    @classmethod
    def from_tree(cls, tree):
        edges = [(p, v) for v in range(tree.n) for p in [tree.parent[v]] if p is not None]
        edges.sort(key=lambda e: (e[0], tree.children[e[0]].index(e[1])))
        return cls.build(tree.labels, edges, tree.root, tree.ap)


def load_model(data):
    if isinstance(data, str):
        data = json.loads(data)
    return KripkeStructure.from_json(data) if "states" in data else TreeModel.from_json(data)


# constructors ----------------------------------------------------------------

def chain(length, labeling=None, ap=None):
    """A path of ``length`` nodes; ``labeling`` maps 0-based positions to labels
    (a callable, a dict or a sequence)."""
    if length < 1:
        raise ValueError("chain length must be positive")
    if labeling is None:
        labels = [()] * length
    elif callable(labeling):
        labels = [labeling(i) for i in range(length)]
    elif isinstance(labeling, dict):
        labels = [labeling.get(i, ()) for i in range(length)]
    else:
        labels = list(labeling)
    return TreeModel.build([None] + list(range(length - 1)), labels, ap)


def complete_binary(depth, ap=()):
    parent = [None]
    level = [0]
    for _ in range(depth):
        nxt = []
        for v in level:
            for _ in range(2):
                parent.append(v)
                nxt.append(len(parent) - 1)
        level = nxt
    return TreeModel.build(parent, None, ap)


def unfold(kripke, depth):
    """Depth-bounded unfolding; cut nodes that still have edges are frontier-marked."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    parent, labels, frontier, origin = [], [], [], []

    def visit(state, par, d):
        v = len(parent)
        parent.append(par)
        labels.append(kripke.labels[state])
        origin.append(state)
        frontier.append(d == depth and bool(kripke.succ[state]))
        if d < depth:
            for t in kripke.succ[state]:
                visit(t, v, d + 1)

    visit(kripke.init, None, 0)
    classes = [kripke.classes[s] for s in origin] if kripke.classes is not None else None
    return TreeModel.build(parent, labels, kripke.ap, frontier, classes, origin)


def _family(layout, init_class, ap=()):
    """Build a structure from ``{class: (labels, [(child_class, multiplicity), ...])}``."""
    names = list(layout)
    idx = {c: i for i, c in enumerate(names)}
    edges = [(idx[c], idx[d]) for c in names for d, k in layout[c][1] for _ in range(k)]
    return KripkeStructure.build([layout[c][0] for c in names], edges, idx[init_class],
                                 ap, names)


def _check_n(n):
    if n < 1:
        raise ValueError("family index must be at least 1")


def _nd_layout(n):
    layout = {"ND_1": ((), [("ND_1", 1)])}
    for ell in range(2, n + 1):
        layout[f"ND_{ell}"] = ((), [(f"ND_{j}", ell) for j in range(1, ell)] + [(f"ND_{ell}", 1)])
    return layout


def kripke_nd(n):
    _check_n(n)
    return _family(_nd_layout(n), f"ND_{n}")


def kripke_d(n):
    _check_n(n)
    if n == 1:
        return _family({"D_1": ((), [("D_1", 1)])}, "D_1")
    layout = _nd_layout(n - 1)
    layout[f"D_{n}"] = ((), [(f"ND_{j}", n) for j in range(1, n)] + [(f"D_{n}", 2)])
    return _family(layout, f"D_{n}")


def _a_layout(n):
    layout = {"A_1": (("a",), [("A_1", 1)])}
    for ell in range(2, n + 1):
        layout[f"A_{ell}"] = ((), [(f"A_{ell - 1}", ell)])
    return layout


def kripke_a(n):
    _check_n(n)
    return _family(_a_layout(n), f"A_{n}", ("a",))


def kripke_na(n):
    _check_n(n)
    layout = _a_layout(n)
    layout[f"NA_{n}"] = ((), [(f"NA_{n}", 1), (f"A_{n}", n)])
    return _family(layout, f"NA_{n}", ("a",))


def gen_nd(n, depth):
    return unfold(kripke_nd(n), depth)


def gen_d(n, depth):
    return unfold(kripke_d(n), depth)


def gen_a(n, depth):
    return unfold(kripke_a(n), depth)


def gen_na(n, depth):
    return unfold(kripke_na(n), depth)


FAMILIES = {"nd": kripke_nd, "d": kripke_d, "a": kripke_a, "na": kripke_na}


# enumeration -------------------------------------------------------------------

def _ordered_shapes(k):
    """Ordered unlabelled trees with ``k`` nodes as nested child tuples."""
    if k == 1:
        return [()]
    return _ordered_forests(k - 1)


def _ordered_forests(m):
    if m == 0:
        return [()]
    out = []
    for first in range(1, m + 1):
        for t in _ordered_shapes(first):
            for rest in _ordered_forests(m - first):
                out.append((t,) + rest)
    return out


def _shape_to_parents(shape):
    parent = []

    def visit(node, par):
        v = len(parent)
        parent.append(par)
        for c in node:
            visit(c, v)

    visit(shape, None)
    return parent


def _unordered_labelled(max_nodes, alphabet):
    """Canonical labelled unordered trees ``(label, children)`` grouped by size."""
    by_size = {}
    flat = []  # (size, tree) in a fixed global order

    def forests(m, limit):
        # sequences of indices into ``flat`` that are non-increasing
        if m == 0:
            yield ()
            return
        for i in range(min(limit, len(flat)) - 1, -1, -1):
            s, t = flat[i]
            if s <= m:
                for rest in forests(m - s, i + 1):
                    yield (t,) + rest

    for k in range(1, max_nodes + 1):
        trees = [(lab, kids) for kids in forests(k - 1, len(flat)) for lab in alphabet]
        by_size[k] = trees
        flat.extend((k, t) for t in trees)
    return by_size


def _canon_to_model(t, ap):
    parent, labels = [], []

    def visit(node, par):
        v = len(parent)
        parent.append(par)
        labels.append(node[0])
        for c in node[1]:
            visit(c, v)

    visit(t, None)
    return TreeModel.build(parent, labels, ap)


def enumerate_trees(max_nodes, ap=(), unordered=False):
    """Every labelled tree with at most ``max_nodes`` nodes, deterministically.

    Ordered trees by default; ``unordered=True`` yields one representative per
    isomorphism class, which suffices for the order-insensitive logics here.
    """
    ap = tuple(sorted(ap))
    alphabet = [frozenset(c for c, bit in zip(ap, bits) if bit)
                for bits in product((0, 1), repeat=len(ap))]
    if unordered:
        by_size = _unordered_labelled(max_nodes, alphabet)
        for k in range(1, max_nodes + 1):
            for t in by_size[k]:
                yield _canon_to_model(t, ap)
        return
    for k in range(1, max_nodes + 1):
        for shape in _ordered_shapes(k):
            parent = _shape_to_parents(shape)
            for labs in product(alphabet, repeat=k):
                yield TreeModel.build(parent, labs, ap)


def enumerate_chains(max_len, ap=()):
    ap = tuple(sorted(ap))
    alphabet = [frozenset(c for c, bit in zip(ap, bits) if bit)
                for bits in product((0, 1), repeat=len(ap))]
    for k in range(1, max_len + 1):
        for labs in product(alphabet, repeat=k):
            yield chain(k, labs, ap)


def subtrees(tree, kind, mode=QuantMode.FULL, horizon=False):
    """Stream the admissible second-order values as frozensets of node ids."""
    for m in tree.domain(kind, mode, horizon):
        yield frozenset(members(m))


# structure analyses ------------------------------------------------------------

def density_oracle(kripke):
    """Does the unfolding contain a dense subtree?

    Greatest-fixpoint pruning over reachable states: keep states that reach,
    inside the kept set, a state with at least two edges into the kept set.
    """
    keep = kripke.reachable()
    while True:
        branching = {s for s in keep if sum(t in keep for t in kripke.succ[s]) >= 2}
        good = set(branching)
        changed = True
        while changed:
            changed = False
            for s in keep - good:
                if any(t in good for t in kripke.succ[s] if t in keep):
                    good.add(s)
                    changed = True
        if good == keep:
            return bool(keep)
        keep = good


@dataclass(frozen=True)
class PathStats:
    n_empty: int
    n_a: int
    d_a: int


def check_path(tree, path):
    if not path:
        raise ValueError("empty path")
    for u, v in zip(path, path[1:]):
        if tree.parent[v] != u:
            raise ValueError(f"{v} is not a child of {u}")


def _distance_to_a(tree, kripke, node):
    """Edges from ``node`` to the nearest ``a``-labelled node."""
    if kripke is not None and tree.origin is not None:
        start = tree.origin[node]
        dist = {start: 0}
        queue = deque([start])
        while queue:
            s = queue.popleft()
            if "a" in kripke.labels[s]:
                return dist[s]
            for t in kripke.succ[s]:
                if t not in dist:
                    dist[t] = dist[s] + 1
                    queue.append(t)
        raise ValueError("no a-labelled state reachable")
    dist = {node: 0}
    queue = deque([node])
    while queue:
        v = queue.popleft()
        if "a" in tree.labels[v]:
            return dist[v]
        for c in tree.children[v]:
            dist[c] = dist[v] + 1
            queue.append(c)
    raise ValueError("no a-labelled descendant within the tree")


def path_stats(tree, path, kripke=None):
    """Statistics of a finite path of an NA-family tree.

    ``kripke`` (the structure the tree unfolds) makes the distance exact
    beyond the truncation depth.
    """
    check_path(tree, path)
    labs = ["a" in tree.labels[v] for v in path]
    n_empty = 0
    while n_empty < len(labs) and not labs[n_empty]:
        n_empty += 1
    if not all(labs[n_empty:]):
        raise ValueError("path is not an empty-label prefix followed by a-nodes")
    n_a = len(labs) - n_empty
    d_a = 0 if n_a else _distance_to_a(tree, kripke, path[-1])
    return PathStats(n_empty, n_a, d_a)


def compat_stats(h, s, t):
    return (s.n_a == t.n_a
            and (s.n_empty == t.n_empty or (s.n_empty >= h and t.n_empty >= h))
            and (s.d_a == t.d_a or (s.d_a >= h and t.d_a >= h)))


def compat(h, tree, path, other, kripke=None):
    return compat_stats(h, path_stats(tree, path, kripke), path_stats(tree, other, kripke))
