"""Pairing formulas with evaluators and comparing them over a corpus."""
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import islice

from ..bits import members
from ..evaluators import (EvalConfig, EvalError, cctl_denotation, compile_msol, denot_msol,
                          eval_gmc, eval_msol, stl_denotation)
from ..evaluators.config import DEFAULT
from ..translators.common import TranslationOutput
from .report import EquivReport

LOGICS = ("gmc", "msol", "cctl", "stl")


@dataclass(frozen=True)
class Binding:
    """An evaluator for one logic, reduced to "formula, model -> node mask".

    MSOL formulas with a free first-order ``anchor`` yield their denotation;
    sentences yield every node or none.  ``alpha`` assigns free fixpoint or
    set variables (as node collections).
    """
    logic: str
    cfg: EvalConfig = DEFAULT
    anchor: str = "x"
    alpha: tuple = field(default=())

    def __post_init__(self):
        if self.logic not in LOGICS:
            raise ValueError(f"unknown logic {self.logic!r}")

    @classmethod
    def for_translation(cls, out: TranslationOutput, horizon=False):
        return cls("msol", EvalConfig(mode=out.mode_requirement, horizon=horizon),
                   out.anchor or "x")

    def denotation(self, formula, model):
        if isinstance(formula, TranslationOutput):
            formula = formula.formula
        alpha = dict(self.alpha)
        if self.logic == "gmc":
            return eval_gmc(formula, model, alpha)
        if self.logic == "cctl":
            return cctl_denotation(formula, model, self.cfg)
        if self.logic == "stl":
            return stl_denotation(formula, model, self.cfg)
        formula = compile_msol(formula)
        if self.anchor in formula.free_fo:
            return denot_msol(formula, self.anchor, model, alpha, self.cfg)
        return model.full if eval_msol(formula, model, None, alpha, self.cfg) else 0


def _unwrap(f):
    return f.formula if isinstance(f, TranslationOutput) else f


def _compare(lhs, rhs, items):
    """First mismatch among ``(index, model_id, model)`` items, and the count."""
    if lhs[1].logic == "msol":
        lhs = (compile_msol(_unwrap(lhs[0])), lhs[1])
    if rhs[1].logic == "msol":
        rhs = (compile_msol(_unwrap(rhs[0])), rhs[1])
    checked = 0
    for idx, model_id, model in items:
        try:
            left = lhs[1].denotation(lhs[0], model)
            right = rhs[1].denotation(rhs[0], model)
        except EvalError as e:
            raise EvalError(f"model {model_id}: {e}") from e
        checked += 1
        if left != right:
            node = min(members(left ^ right))
            return checked, {
                "index": idx, "model_id": model_id, "model": model.to_json(), "node": node,
                "valuations": {k: sorted(v) for k, v in lhs[1].alpha},
                "lhs": bool(left >> node & 1), "rhs": bool(right >> node & 1),
            }
    return checked, None


def _chunk(lhs, rhs, corpus, start, stop):
    items = ((i, mid, t) for i, (mid, t) in
             enumerate(islice(corpus.models(), start, stop), start))
    return _compare(lhs, rhs, items)


def default_jobs():
    try:
        return max(1, int(os.environ.get("MTLKIT_JOBS", "1")))
    except ValueError:
        return 1


def equiv_check(lhs, rhs, corpus, jobs=None):
    """Compare ``(formula, Binding)`` pairs node by node on every model."""
    start = time.perf_counter()
    jobs = jobs or default_jobs()
    if jobs <= 1:
        items = ((i, mid, t) for i, (mid, t) in enumerate(corpus.models()))
        checked, cex = _compare(lhs, rhs, items)
    else:
        total = sum(1 for _ in corpus.models())
        step = max(1, -(-total // (jobs * 4)))
        bounds = [(s, min(total, s + step)) for s in range(0, total, step)]
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_chunk, *zip(*[(lhs, rhs, corpus, a, b) for a, b in bounds])))
        fails = [c for _, c in results if c is not None]
        cex = min(fails, key=lambda c: c["index"]) if fails else None
        checked = cex["index"] + 1 if cex else sum(n for n, _ in results)
    elapsed = (time.perf_counter() - start) * 1000
    return EquivReport("fail" if cex else "pass", checked, cex, elapsed)
