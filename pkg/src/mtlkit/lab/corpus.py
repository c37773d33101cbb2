"""Deterministic model sources for equivalence runs."""
import json
from dataclasses import dataclass
from pathlib import Path

from ..models import FAMILIES, TreeModel, enumerate_chains, enumerate_trees, load_model, unfold

SOURCES = ("enumerate", "chains", "family", "files")


@dataclass(frozen=True)
class Corpus:
    """Where the models come from.

    Build instances with the class-method constructors; iteration order is
    fixed by the parameters alone.
    """
    source: str
    max_nodes: int = 0
    ap: tuple = ()
    unordered: bool = False
    family: str = None
    ns: tuple = ()
    depth: int = 0
    paths: tuple = ()
    seed: int = 0

    def __post_init__(self):
        if self.source not in SOURCES:
            raise ValueError(f"unknown corpus source {self.source!r}")
        if self.source == "family" and self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")

    @classmethod
    def enumerate(cls, max_nodes, ap=(), unordered=False, seed=0):
        return cls("enumerate", max_nodes=max_nodes, ap=tuple(sorted(ap)),
                   unordered=unordered, seed=seed)

    @classmethod
    def chains(cls, max_len, ap=(), seed=0):
        return cls("chains", max_nodes=max_len, ap=tuple(sorted(ap)), seed=seed)

    @classmethod
    def from_family(cls, name, ns, depth, seed=0):
        return cls("family", family=name, ns=tuple(ns), depth=depth, seed=seed)

    @classmethod
    def files(cls, paths, seed=0):
        return cls("files", paths=tuple(str(p) for p in paths), seed=seed)

    def models(self):
        """Yield ``(model_id, TreeModel)`` pairs."""
        if self.source == "enumerate":
            trees = enumerate_trees(self.max_nodes, self.ap, self.unordered)
            yield from ((f"tree-{i}", t) for i, t in enumerate(trees))
        elif self.source == "chains":
            yield from ((f"chain-{i}", t) for i, t in enumerate(enumerate_chains(self.max_nodes, self.ap)))
        elif self.source == "family":
            for n in self.ns:
                yield f"{self.family}-{n}-d{self.depth}", unfold(FAMILIES[self.family](n), self.depth)
        else:
            for p in self.paths:
                model = load_model(json.loads(Path(p).read_text()))
                if not isinstance(model, TreeModel):
                    raise ValueError(f"{p}: expected a tree model")
                yield p, model

    def __iter__(self):
        return self.models()
