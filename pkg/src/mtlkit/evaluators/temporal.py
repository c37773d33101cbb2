"""Counting CTL* and its semilattice extension on finite trees.

The "current tree" is a pair ``(root, view)``: ``view`` is a mask of nodes
forming a subtree rooted at ``root``.  The subtree of the current tree at a
node ``w`` is simply ``(w, view & desc[w])``.
"""
from ..bits import members
from ..syntax import temporal as tl
from .config import DEFAULT, EvalError


class _Evaluator:
    def __init__(self, tree, cfg):
        self.tree = tree
        self.cfg = cfg
        self.memo = {}
        self.path_memo = {}

    # paths ---------------------------------------------------------------

    def _branch(self, root, end):
        out = []
        v = end
        while v != root:
            out.append(v)
            v = self.tree.parent[v]
        out.append(root)
        return tuple(reversed(out))

    def paths(self, root, view):
        key = (root, view)
        hit = self.path_memo.get(key)
        if hit is not None:
            return hit
        t = self.tree
        inside = view & t.desc[root]
        domain = self.cfg.cctl_domain
        ends = []
        for v in members(inside):
            if domain == "maximal" and t.child_mask[v] & view:
                continue
            if domain == "infinite-approx" and not t.frontier[v]:
                continue
            ends.append(v)
        out = [self._branch(root, v) for v in ends]
        self.path_memo[key] = out
        return out

    # path formulas ---------------------------------------------------------

    def on_path(self, f, path, i, view):
        if tl.is_state(f):
            w = path[i]
            return self.state(f, w, view & self.tree.desc[w])
        if isinstance(f, tl.Not):
            return not self.on_path(f.body, path, i, view)
        if isinstance(f, tl.And):
            return self.on_path(f.left, path, i, view) and self.on_path(f.right, path, i, view)
        if isinstance(f, tl.Or):
            return self.on_path(f.left, path, i, view) or self.on_path(f.right, path, i, view)
        if isinstance(f, tl.Implies):
            return (not self.on_path(f.left, path, i, view)) or self.on_path(f.right, path, i, view)
        if isinstance(f, tl.Next):
            return i + 1 < len(path) and self.on_path(f.body, path, i + 1, view)
        if isinstance(f, tl.Until):
            for j in range(i, len(path)):
                if self.on_path(f.right, path, j, view):
                    return True
                if not self.on_path(f.left, path, j, view):
                    return False
            return False
        if isinstance(f, tl.Release):
            for j in range(i, len(path)):
                if not self.on_path(f.right, path, j, view):
                    return False
                if self.on_path(f.left, path, j, view):
                    return True
            return True
        if isinstance(f, tl.Eventually):
            return any(self.on_path(f.body, path, j, view) for j in range(i, len(path)))
        if isinstance(f, tl.Globally):
            return all(self.on_path(f.body, path, j, view) for j in range(i, len(path)))
        raise EvalError(f"not a path formula: {f!r}")

    # state formulas ----------------------------------------------------------

    def state(self, f, root, view):
        key = (id(f), root, view)
        hit = self.memo.get(key)
        if hit is None:
            hit = self.memo[key] = self._state(f, root, view)
        return hit

    def _state(self, f, root, view):
        t = self.tree
        if isinstance(f, tl.TT):
            return True
        if isinstance(f, tl.FF):
            return False
        if isinstance(f, tl.Prop):
            return f.name in t.labels[root]
        if isinstance(f, tl.Not):
            return not self.state(f.body, root, view)
        if isinstance(f, tl.And):
            return self.state(f.left, root, view) and self.state(f.right, root, view)
        if isinstance(f, tl.Or):
            return self.state(f.left, root, view) or self.state(f.right, root, view)
        if isinstance(f, tl.Implies):
            return (not self.state(f.left, root, view)) or self.state(f.right, root, view)
        if isinstance(f, tl.E):
            return any(self.on_path(f.body, p, 0, view) for p in self.paths(root, view))
        if isinstance(f, tl.A):
            return all(self.on_path(f.body, p, 0, view) for p in self.paths(root, view))
        if isinstance(f, tl.D):
            hits = 0
            for c in members(t.child_mask[root] & view):
                if self.state(f.body, c, view & t.desc[c]):
                    hits += 1
            return hits >= f.grade
        if isinstance(f, tl.SEMILATTICE):
            return self._lattice(f, root, view)
        raise EvalError(f"path formula in state position: {f!r}")

    # semilattice operators ------------------------------------------------------

    def nonblocking(self, sub):
        if self.cfg.relax_nonblocking:
            return True
        t = self.tree
        for v in members(sub):
            if not t.child_mask[v] & sub and not (self.cfg.horizon and t.frontier[v]):
                return False
        return True

    def closed_under(self, small, big, w_mask):
        """Every ``w``-node of ``small`` keeps all its ``big``-children."""
        kids = self.tree.child_mask
        for w in members(small & w_mask):
            if kids[w] & big & ~small:
                return False
        return True

    def strict_sub(self, small, big, w_mask):
        return small != big and small & ~big == 0 and self.closed_under(small, big, w_mask)

    def _lattice(self, f, root, view):
        t = self.tree
        w_mask = 0
        for w in members(view):
            if self.state(f.chi, w, view & t.desc[w]):
                w_mask |= 1 << w
        rooted = [s for s in t.rooted_subtrees(root) if self.nonblocking(s)]
        if isinstance(f, (tl.UU, tl.RR)):
            cands = [s for s in rooted if self.strict_sub(s, view, w_mask)]

            def between(lo):
                return [s for s in cands if self.strict_sub(lo, s, w_mask)]
        else:
            cands = [s for s in rooted if self.strict_sub(view, s, w_mask)]

            def between(hi):
                return [s for s in cands if self.strict_sub(s, hi, w_mask)]

        def holds(g, s):
            return self.state(g, root, s)

        if isinstance(f, (tl.UU, tl.SS)):
            return any(holds(f.right, s) and all(holds(f.left, u) for u in between(s))
                       for s in cands)
        return all(holds(f.right, s) or any(holds(f.left, u) for u in between(s))
                   for s in cands)


def _check_node(tree, node):
    if not 0 <= node < tree.n:
        raise EvalError(f"node {node} out of range")


def eval_cctl(f, tree, node, cfg=None):
    """Truth of a state formula at ``node`` (the subtree below it)."""
    _check_node(tree, node)
    ev = _Evaluator(tree, cfg or DEFAULT)
    return ev.state(f, node, tree.desc[node])


def cctl_denotation(f, tree, cfg=None):
    """Mask of the nodes satisfying a state formula, sharing one memo."""
    ev = _Evaluator(tree, cfg or DEFAULT)
    out = 0
    for v in range(tree.n):
        if ev.state(f, v, tree.desc[v]):
            out |= 1 << v
    return out


def _as_mask(sub):
    if isinstance(sub, int):
        return sub
    return sum(1 << v for v in set(sub))


def subtree_root(tree, sub):
    """Root of the subtree ``sub`` (a mask); ``EvalError`` if not a subtree."""
    nodes = members(sub)
    if not nodes:
        raise EvalError("empty node set is not a subtree")
    tops = [v for v in nodes if tree.parent[v] is None or not sub >> tree.parent[v] & 1]
    if len(tops) != 1:
        raise EvalError("node set is not a connected subtree")
    return tops[0]


def eval_stl(f, tstar, sub, cfg=None):
    """Truth of ``f`` on the subtree ``sub`` (mask or node collection) of ``tstar``."""
    sub = _as_mask(sub)
    if sub & ~tstar.full:
        raise EvalError("subtree has nodes outside the model")
    root = subtree_root(tstar, sub)
    ev = _Evaluator(tstar, cfg or DEFAULT)
    return ev.state(f, root, sub)


def stl_denotation(f, tree, cfg=None):
    """Nodes ``w`` whose full subtree satisfies ``f``."""
    ev = _Evaluator(tree, cfg or DEFAULT)
    out = 0
    for v in range(tree.n):
        if ev.state(f, v, tree.desc[v]):
            out |= 1 << v
    return out


def eval_path(f, tree, path, i=0, cfg=None):
    """Truth of a path formula at position ``i`` of ``path`` (a list of nodes
    going down from parent to child)."""
    path = tuple(path)
    for u, v in zip(path, path[1:]):
        if tree.parent[v] != u:
            raise EvalError(f"{v} is not a child of {u}")
    if not 0 <= i < len(path):
        raise EvalError("position outside the path")
    ev = _Evaluator(tree, cfg or DEFAULT)
    return ev.on_path(f, path, i, tree.full)
