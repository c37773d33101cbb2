"""The acceptance battery: fixed formula suites and one runner per criterion.

Each runner returns a ``CriterionResult``; a criterion passes when its check
holds and it finishes inside its time budget.
"""
import random
import time
from dataclasses import dataclass, field

from ..concrete import parse, show
from ..evaluators import EvalConfig
from ..syntax.msol import QuantMode
from ..translators import (cctl_to_mpl, mtl_chain_to_fo, osafgmc_to_wmtl, osgmc_to_mtl,
                           stl_to_mtl)
from .bindings import Binding, equiv_check
from .corpus import Corpus
from .experiments import (acceptance_family_check, family_check, grade_check,
                          hcompat_experiment)
from .generators import random_formula
from .lemmas import lemma_suite

AP = ("a", "q")

OSGMC_SENTENCES = (
    "mu X. q | (a & <1> X)",
    "nu X. mu Y. (a & <1> X) | (<1> Y)",
    "nu X. mu Y. (<2> X) | (<1> Y)",
    "mu X. a | [1] X",
    "mu X. q | (a & [1] X)",
    "nu X. a & [1] X",
    "nu X. a & <1> X",
    "mu X. a | <2> X",
    "nu X. q | (a & [2] X)",
    "mu X. mu Y. (a & <1> X) | (q & <1> Y) | (a & q)",
    "nu X. mu Y. (q & [1] X) | (!a & [1] Y)",
    "mu X. nu Y. (a & <1> Y) | (q & <1> X)",
    "<1> (mu X. q | <1> X)",
    "a & [1] q",
    "<2> (a | q)",
    "!(mu X. a | <1> X)",
    "[2] (nu X. a & <1> X)",
    "mu X. (a & q) | <1> (a & X)",
    "nu X. (a | q) & [1] X",
    "mu X. <1> (q & X) | (a & !q)",
)

OSAFGMC_SENTENCES = (
    "mu X. a | [1] X",
    "mu X. q | (a & <1> X)",
    "nu X. a & [1] X",
    "nu X. a & <1> X",
    "mu X. a | <2> X",
    "mu X. mu Y. (a & <1> X) | (q & <1> Y) | (a & q)",
    "nu X. q | (a & [2] X)",
    "<1> (mu X. q | <1> X)",
    "mu X. (a & q) | <1> (a & X)",
    "nu X. (a | q) & [1] X",
)

STL_FORMULAS = (
    "(a UU{tt} q)",
    "(a RR{tt} q)",
    "(a SS{tt} q)",
    "(a BB{tt} q)",
    "(q UU{a} tt)",
    "(a SS{q} (a | q))",
    "!(tt RR{a} q)",
    "((a SS{tt} q) UU{tt} a)",
)

CCTL_FORMULAS = (
    "E (a U q)",
    "A (a U q)",
    "E G a",
    "A F q",
    "E X (a & q)",
    "A X a",
    "D{2} a",
    "E (F a & F q)",
    "A (a R q)",
    "E (X X a | G q)",
    "D{1} (A G !q)",
    "!E F (a & D{2} tt)",
)

CHAIN_SENTENCES = (
    "ET X. A x. x in X",
    "E x. P_a(x)",
    "A x. P_a(x)",
    "ET X. E x. (x in X & P_a(x))",
    "AT X. (A x. (x in X -> P_a(x)))",
    "ET X. (A x. (x in X -> P_a(x)) & E y. y in X)",
    "ET X. E x. (x in X & !(E y. (y in X & y < x)) & P_a(x))",
    "AT X. ((E x. (x in X & P_a(x))) | (A x. (x in X -> !P_a(x))))",
    "ET X. (A x. (x in X <-> P_a(x)))",
    "ET X. ET Y. (A x. (x in X -> x in Y) & E y. (y in Y & !y in X))",
    "AT X. E x. (x in X -> P_a(x))",
)

LEMMA_SUITES = ("monotonicity", "independence", "shannon", "suppression-order",
                "finite-witness")


@dataclass
class CriterionResult:
    number: int
    name: str
    ok: bool
    elapsed_s: float
    limit_s: float
    detail: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.ok and self.elapsed_s <= self.limit_s

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        note = "" if self.elapsed_s <= self.limit_s else " (over time budget)"
        return (f"[{status}] criterion {self.number:>2} {self.name}: "
                f"{self.elapsed_s:.2f}s / {self.limit_s:g}s{note}")


def _timed(number, name, limit, fn):
    start = time.perf_counter()
    ok, detail = fn()
    return CriterionResult(number, name, ok, time.perf_counter() - start, limit, detail)


def _equiv_all(pairs, corpus, jobs):
    """Run ``equiv_check`` for each (label, lhs, rhs); stop at the first failure."""
    rows = []
    for label, lhs, rhs in pairs:
        report = equiv_check(lhs, rhs, corpus, jobs)
        rows.append({"formula": label, "status": report.status, "models": report.models})
        if not report.ok:
            return False, {"rows": rows, "counterexample": report.counterexample}
    return True, {"rows": rows}


def round_trip(samples=100, depth=6, seed=0):
    def run():
        bad = []
        for logic in ("msol", "gmc", "cctl", "stl"):
            rng = random.Random(f"round-trip:{logic}:{seed}")
            for _ in range(samples):
                f = random_formula(logic, rng, depth)
                if parse(show(f), logic) != f:
                    bad.append({"logic": logic, "formula": show(f)})
        return not bad, {"failures": bad[:5], "per_logic": samples}
    return _timed(1, "parse/print round trip", 5, run)


def gmc_translation(max_nodes=6, formulas=OSGMC_SENTENCES, jobs=None):
    def run():
        corpus = Corpus.enumerate(max_nodes, AP, unordered=True)
        pairs = []
        for text in formulas:
            f = parse(text, "gmc")
            out = osgmc_to_mtl(f, "x")
            pairs.append((text, (f, Binding("gmc")), (out, Binding.for_translation(out))))
        return _equiv_all(pairs, corpus, jobs)
    return _timed(2, "OSGMC to MTL translation", 600, run)


def weak_translation(max_nodes=6, formulas=OSAFGMC_SENTENCES, jobs=None):
    def run():
        corpus = Corpus.enumerate(max_nodes, AP, unordered=True)
        pairs = []
        for text in formulas:
            f = parse(text, "gmc")
            out = osafgmc_to_wmtl(f, "x")
            if out.mode_requirement is not QuantMode.WEAK:
                return False, {"formula": text, "mode": out.mode_requirement.value}
            pairs.append((text, (f, Binding("gmc")), (out, Binding.for_translation(out))))
        return _equiv_all(pairs, corpus, jobs)
    return _timed(3, "OSAFGMC to WMTL translation", 600, run)


def stl_translation(max_nodes=5, formulas=STL_FORMULAS, jobs=None):
    def run():
        corpus = Corpus.enumerate(max_nodes, AP, unordered=True)
        cfg = EvalConfig(relax_nonblocking=True)
        pairs = []
        for text in formulas:
            f = parse(text, "stl")
            out = stl_to_mtl(f, relax_nonblocking=True)
            pairs.append((text, (f, Binding("stl", cfg)), (out, Binding.for_translation(out))))
        return _equiv_all(pairs, corpus, jobs)
    return _timed(4, "semilattice translation (relaxed)", 600, run)


def cctl_translation(max_nodes=5, formulas=CCTL_FORMULAS, jobs=None):
    def run():
        corpus = Corpus.enumerate(max_nodes, AP, unordered=True)
        pairs = []
        for domain in ("all", "finite"):
            cfg = EvalConfig(cctl_domain=domain)
            for text in formulas:
                f = parse(text, "cctl")
                out = cctl_to_mpl(f, "x", domain)
                pairs.append((f"{text} [{domain}]", (f, Binding("cctl", cfg)),
                              (out, Binding.for_translation(out))))
        return _equiv_all(pairs, corpus, jobs)
    return _timed(5, "CCTL* to MPL translation", 300, run)


def lemma_suites(max_nodes=5, samples=200, seed=0, suites=LEMMA_SUITES):
    def run():
        corpus = Corpus.enumerate(max_nodes, AP)
        rows = []
        for name in suites:
            report = lemma_suite(name, corpus, samples, seed)
            rows.append({"suite": name, "status": report.status,
                         "samples": report.details["samples"]})
            if not report.ok:
                return False, {"rows": rows, "counterexample": report.counterexample}
        return True, {"rows": rows}
    return _timed(6, "lemma suites", 300, run)


def _report_check(report):
    return report.ok, report.to_json()


def family_structure():
    return _timed(7, "family root degrees and density", 1, lambda: _report_check(family_check()))


def distinguishing_grade():
    return _timed(8, "distinguishing grade", 1, lambda: _report_check(grade_check()))


def chain_translation(max_len=6, formulas=CHAIN_SENTENCES, jobs=None):
    def run():
        corpus = Corpus.chains(max_len, ("a",))
        pairs = []
        for text in formulas:
            f = parse(text, "msol")
            pairs.append((text, (f, Binding("msol")), (mtl_chain_to_fo(f), Binding("msol"))))
        return _equiv_all(pairs, corpus, jobs)
    return _timed(9, "chain translation to FO", 60, run)


def acceptance_family():
    return _timed(10, "A/NA acceptance family", 1,
                  lambda: _report_check(acceptance_family_check()))


def h_compatibility(seed=0):
    def run():
        report = hcompat_experiment(4, 8, 3, 3, 100, seed)
        return report.status != "fail" and report.details["violations"] == 0, report.to_json()
    return _timed(11, "h-compatibility", 300, run)


CRITERIA = (round_trip, gmc_translation, weak_translation, stl_translation, cctl_translation,
            lemma_suites, family_structure, distinguishing_grade, chain_translation,
            acceptance_family, h_compatibility)


def run_all(only=None, jobs=None):
    """Run the battery (or the criterion numbers in ``only``), yielding results."""
    for number, runner in enumerate(CRITERIA, 1):
        if only and number not in only:
            continue
        kwargs = {"jobs": jobs} if "jobs" in runner.__code__.co_varnames else {}
        yield runner(**kwargs)
