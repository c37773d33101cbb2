"""Experiments on the D/ND and A/NA families of Kripke trees."""
import random
import time
from collections import defaultdict

from ..concrete import show
from ..evaluators import EvalConfig, eval_cctl, eval_path
from ..models import (compat, density_oracle, gen_a, gen_d, gen_na, gen_nd, kripke_a, kripke_d,
                      kripke_na, kripke_nd, path_stats)
from ..syntax import temporal as tl
from .generators import enumerate_balanced_paths, enumerate_cctl
from .report import EquivReport

EXPECTED_DEGREE = {
    "nd": lambda n: n * (n - 1) + 1,
    "d": lambda n: n * (n - 1) + 2,
    "a": lambda n: n,
    "na": lambda n: n + 1,
}
_KRIPKE = {"nd": kripke_nd, "d": kripke_d, "a": kripke_a, "na": kripke_na}


def _ms(start):
    return (time.perf_counter() - start) * 1000


def root_degrees(n):
    """Out-degree of the initial state of each family structure."""
    out = {}
    for name, build in _KRIPKE.items():
        k = build(n)
        out[name] = len(k.succ[k.init])
    return out


def family_check(ns=(2, 3, 4)):
    """Root degrees against their closed forms, plus the density oracle."""
    start = time.perf_counter()
    rows = []
    for n in ns:
        degrees = root_degrees(n)
        for name, deg in degrees.items():
            rows.append({"n": n, "check": f"degree:{name}", "got": deg,
                         "want": EXPECTED_DEGREE[name](n)})
        rows.append({"n": n, "check": "dense:d", "got": density_oracle(kripke_d(n)), "want": True})
        rows.append({"n": n, "check": "dense:nd", "got": density_oracle(kripke_nd(n)),
                     "want": False})
    bad = [r for r in rows if r["got"] != r["want"]]
    return EquivReport("fail" if bad else "pass", 4 * len(ns), bad[0] if bad else None,
                       _ms(start), {"rows": rows})


def grade_check(ns=(2, 3), depth=2):
    """``D{n(n-1)+2} tt`` separates the D/ND roots, ``D{n(n-1)+1} tt`` does not."""
    start = time.perf_counter()
    rows = []
    for n in ns:
        d_tree, nd_tree = gen_d(n, depth), gen_nd(n, depth)
        for k, want in ((n * (n - 1) + 2, (True, False)), (n * (n - 1) + 1, (True, True))):
            f = tl.D(k, tl.TT())
            got = (eval_cctl(f, d_tree, d_tree.root), eval_cctl(f, nd_tree, nd_tree.root))
            rows.append({"n": n, "formula": show(f), "got": list(got), "want": list(want),
                         "size": tl.cctl_size(f)})
    bad = [r for r in rows if r["got"] != r["want"]]
    return EquivReport("fail" if bad else "pass", 2 * len(ns), bad[0] if bad else None,
                       _ms(start), {"rows": rows})


def acceptance_family_check(ns=(1, 2, 3), extra_depth=2):
    """``A F a`` over maximal paths: true on A_n roots, false on NA_n roots."""
    start = time.perf_counter()
    f = tl.A(tl.Eventually(tl.Prop("a")))
    cfg = EvalConfig(cctl_domain="maximal")
    rows = []
    for n in ns:
        a_tree, na_tree = gen_a(n, n + extra_depth), gen_na(n, n + extra_depth)
        got = [eval_cctl(f, a_tree, a_tree.root, cfg), eval_cctl(f, na_tree, na_tree.root, cfg)]
        rows.append({"n": n, "got": got, "want": [True, False]})
    bad = [r for r in rows if r["got"] != r["want"]]
    return EquivReport("fail" if bad else "pass", 2 * len(ns), bad[0] if bad else None,
                       _ms(start), {"rows": rows, "formula": show(f)})


def indist_experiment(n, depth, max_formula_size, max_grade=None):
    """Evaluate every state formula up to the size bound at the roots of the
    truncated D_n and ND_n trees.

    Always an approximate report: truncation cuts the trees the claim is
    about.  ``details`` holds the table and the disagreements, each with its
    size so the small ones stand out.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    start = time.perf_counter()
    d_tree, nd_tree = gen_d(n, depth), gen_nd(n, depth)
    rows, diffs = [], []
    for f in enumerate_cctl(max_formula_size, (), "state", max_grade):
        a = eval_cctl(f, d_tree, d_tree.root)
        b = eval_cctl(f, nd_tree, nd_tree.root)
        row = {"formula": show(f), "size": tl.cctl_size(f), "d": a, "nd": b}
        rows.append(row)
        if a != b:
            diffs.append(row)
    small = [r for r in diffs if r["size"] < n]
    details = {"n": n, "depth": depth, "rows": rows, "disagreements": diffs,
               "below_size_n": small, "caveat": "depth-truncated unfoldings"}
    return EquivReport("approx-report", 2, None, _ms(start), details)


def _finite_paths(tree, max_depth):
    """All downward paths whose nodes lie at depth at most ``max_depth``."""
    out = []
    for v in range(tree.n):
        if tree.depth[v] > max_depth:
            continue
        stack = [(v,)]
        while stack:
            p = stack.pop()
            out.append(p)
            for c in tree.children[p[-1]]:
                if tree.depth[c] <= max_depth:
                    stack.append(p + (c,))
    return out


def hcompat_experiment(n=4, depth=8, h=3, max_formula_size=3, pairs=100, seed=0):
    """Balanced path formulas against R(h)-compatible path pairs in the
    truncated NA_n tree.

    Paths keep ``max_formula_size`` levels of distance from the cut so that
    no formula looks past it.
    """
    if not 1 <= h <= n:
        raise ValueError("h must lie in [1, n]")
    if max_formula_size > h:
        raise ValueError("formula size must not exceed h")
    start = time.perf_counter()
    tree, kripke = gen_na(n, depth), kripke_na(n)
    groups = defaultdict(list)
    for p in _finite_paths(tree, depth - max_formula_size):
        s = path_stats(tree, p, kripke)
        groups[(s.n_a, min(s.n_empty, h), min(s.d_a, h))].append(p)
    keys = sorted(k for k, ps in groups.items() if len(ps) >= 2)
    rng = random.Random(f"hcompat:{seed}")
    chosen = []
    for _ in range(pairs):
        ps = groups[rng.choice(keys)]
        first, second = rng.sample(range(len(ps)), 2)
        chosen.append((ps[first], ps[second]))
    formulas = list(enumerate_balanced_paths(max_formula_size, ("a",)))
    cfg = EvalConfig(cctl_domain="finite")
    violations = []
    for p, q in chosen:
        if not compat(h, tree, p, q, kripke):
            raise AssertionError("sampled pair is not compatible")
        for f in formulas:
            if eval_path(f, tree, p, 0, cfg) != eval_path(f, tree, q, 0, cfg):
                violations.append({"formula": show(f), "paths": [list(p), list(q)]})
    details = {"pairs": len(chosen), "formulas": len(formulas), "violations": len(violations),
               "classes": len(keys), "h": h, "n": n, "depth": depth}
    if violations:
        return EquivReport("fail", 1, violations[0], _ms(start), details)
    return EquivReport("approx-report", 1, None, _ms(start), details)
