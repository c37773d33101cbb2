"""Graded mu-calculus by Kleene iteration, on trees and on Kripke multigraphs."""
from ..syntax import gmc as g
from .config import EvalError


def _check_polarity(f):
    """Every bound variable must sit under an even number of negations
    counted from its binder."""
    def go(h, neg, binder_neg):
        if isinstance(h, g.Var):
            if h.name in binder_neg and binder_neg[h.name] != neg:
                raise EvalError(f"fixpoint variable {h.name} occurs negatively")
            return
        if isinstance(h, g.Not):
            go(h.body, not neg, binder_neg)
            return
        if isinstance(h, g.FIX):
            go(h.body, neg, {**binder_neg, h.var: neg})
            return
        for c in g.children(h):
            go(c, neg, binder_neg)

    go(f, False, {})


class _Structure:
    """What the evaluator needs: node count, successor lists, label masks."""

    def __init__(self, n, succ, labels, tree_like):
        self.n = n
        self.full = (1 << n) - 1
        self.succ = succ
        self.labels = labels
        if tree_like:
            self.succ_mask = [sum(1 << c for c in s) for s in succ]
        else:
            self.succ_mask = None

    def count_in(self, w, mask):
        if self.succ_mask is not None:
            return (mask & self.succ_mask[w]).bit_count()
        return sum(1 for c in self.succ[w] if mask >> c & 1)


def _evaluate(f, st, env, stats):
    def ev(h, env):
        if isinstance(h, g.TT):
            return st.full
        if isinstance(h, g.FF):
            return 0
        if isinstance(h, g.Prop):
            return st.labels.get(h.name, 0)
        if isinstance(h, g.Var):
            try:
                return env[h.name]
            except KeyError:
                raise EvalError(f"unassigned variable {h.name}") from None
        if isinstance(h, g.Not):
            return st.full ^ ev(h.body, env)
        if isinstance(h, g.And):
            a = ev(h.left, env)
            return a & ev(h.right, env) if a else 0
        if isinstance(h, g.Or):
            a = ev(h.left, env)
            return a if a == st.full else a | ev(h.right, env)
        if isinstance(h, g.Diamond):
            if h.grade == 0:
                return st.full
            s = ev(h.body, env)
            out = 0
            for w in range(st.n):
                if st.count_in(w, s) >= h.grade:
                    out |= 1 << w
            return out
        if isinstance(h, g.Box):
            if h.grade == 0:
                return 0
            bad = st.full ^ ev(h.body, env)
            out = 0
            for w in range(st.n):
                if st.count_in(w, bad) < h.grade:
                    out |= 1 << w
            return out
        cur = 0 if isinstance(h, g.Mu) else st.full
        rounds = 0
        while True:
            rounds += 1
            nxt = ev(h.body, {**env, h.var: cur})
            if nxt == cur:
                break
            cur = nxt
        if stats is not None:
            stats["max_rounds"] = max(stats.get("max_rounds", 0), rounds)
        return cur

    return ev(f, env)


def _assignment(alpha):
    out = {}
    for k, v in (alpha or {}).items():
        if isinstance(v, int):
            out[k] = v
        else:
            out[k] = sum(1 << x for x in set(v))
    return out


def eval_gmc(f, tree, alpha=None, stats=None):
    """Denotation (mask) of ``f`` on a tree; ``alpha`` maps free variables
    to masks or node collections.  ``stats`` (a dict) receives the largest
    number of Kleene rounds used by any fixpoint."""
    _check_polarity(f)
    st = _tree_structure(tree)
    return _evaluate(f, st, _assignment(alpha), stats)


def _tree_structure(tree):
    cache = tree.__dict__.get("_gmc_structure")
    if cache is None:
        cache = _Structure(tree.n, tree.children, tree.label_mask, True)
        tree.__dict__["_gmc_structure"] = cache
    return cache


def eval_gmc_graph(f, kripke, alpha=None, stats=None):
    """As ``eval_gmc`` over states; parallel edges count separately."""
    _check_polarity(f)
    labels = {}
    for s, lab in enumerate(kripke.labels):
        for a in lab:
            labels[a] = labels.get(a, 0) | 1 << s
    st = _Structure(kripke.n, kripke.succ, labels, False)
    return _evaluate(f, st, _assignment(alpha), stats)
