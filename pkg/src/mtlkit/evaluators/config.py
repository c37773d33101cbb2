from dataclasses import dataclass

from ..syntax.msol import QuantMode

PATH_DOMAINS = ("all", "finite", "maximal", "infinite-approx")


class EvalError(ValueError):
    pass


@dataclass(frozen=True)
class EvalConfig:
    """Evaluation parameters shared by all oracles.

    ``horizon`` turns frontier marks into stand-ins for infinity: a set is
    "infinite" when it holds a frontier node and a subtree is non-blocking
    when all its leaves are frontier nodes.
    """
    mode: QuantMode = QuantMode.FULL
    horizon: bool = False
    cctl_domain: str = "all"
    relax_nonblocking: bool = False

    def __post_init__(self):
        object.__setattr__(self, "mode", QuantMode(self.mode))
        if self.cctl_domain not in PATH_DOMAINS:
            raise EvalError(f"unknown path domain {self.cctl_domain!r}")
        if self.cctl_domain == "infinite-approx" and not self.horizon:
            raise EvalError("the infinite-approx path domain needs the horizon convention")


DEFAULT = EvalConfig()
