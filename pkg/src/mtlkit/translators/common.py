"""Pieces shared by all translators."""
from dataclasses import dataclass, field

from ..names import Fresh
from ..syntax import msol as m
from ..syntax.msol import QuantMode
from .stdlib import child


class TranslationError(ValueError):
    pass


@dataclass(frozen=True)
class TranslationOutput:
    formula: m.Formula
    anchor: str
    fresh_vars: list = field(default_factory=list)
    mode_requirement: QuantMode = QuantMode.FULL


class Run:
    """State of one translation: the fresh-name supply and what it issued."""

    def __init__(self, avoid):
        self.fresh = Fresh(avoid)
        self.issued = []

    def new(self, base):
        name = self.fresh(base)
        self.issued.append(name)
        return name


def graded(run, x, k, body_at, inside=None):
    """``k`` pairwise distinct children ``y`` of ``x`` with ``body_at(y)``;
    ``inside(y)`` optionally restricts the children considered.

    For ``k >= 2`` the body is stated once, under a universal over the chosen
    children, so nested grades do not multiply the output size.
    """
    if k == 0:
        return m.TT()
    ys = [run.new("y") for _ in range(k)]
    if k == 1:
        shared = body_at(ys[0])
    else:
        u = run.new("y")
        shared = m.Forall(u, m.Implies(m.disj(*[m.Eq(u, y) for y in ys]), body_at(u)))
    out = shared
    for i in reversed(range(k)):
        parts = [child(x, ys[i], run.fresh)]
        if inside is not None:
            parts.append(inside(ys[i]))
        parts += [m.Not(m.Eq(ys[j], ys[i])) for j in range(i)]
        parts.append(out)
        out = m.Exists(ys[i], m.conj(*parts))
    return out
