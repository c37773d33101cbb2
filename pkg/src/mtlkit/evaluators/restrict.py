"""Restriction of node sets and assignments to connected regions."""
from dataclasses import dataclass, field

from ..bits import has, members
from .config import EvalError


@dataclass(frozen=True)
class VarRoles:
    """Variables used at time zero (``zero``) and one step ahead (``one``)."""
    zero: frozenset = field(default_factory=frozenset)
    one: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "zero", frozenset(self.zero))
        object.__setattr__(self, "one", frozenset(self.one))

    @property
    def all(self):
        return self.zero | self.one


def restrict_component(region, w, tree):
    """Nodes ``v`` of ``region`` below ``w`` with the whole ``w..v`` segment inside."""
    if not has(region, w):
        raise EvalError(f"node {w} is not in the region")
    out = 0
    stack = [w]
    while stack:
        v = stack.pop()
        out |= 1 << v
        stack.extend(members(tree.child_mask[v] & region))
    return out


def _require(alpha, roles):
    missing = roles.all - set(alpha)
    if missing:
        raise EvalError(f"assignment misses {sorted(missing)}")


def restrict_assignment(alpha, region, roles, tree):
    """Cut each variable down to the part of the model it can be read on."""
    _require(alpha, roles)
    below = tree.post(region)
    out = {}
    for var in roles.all:
        if var in roles.zero and var in roles.one:
            keep = region | below
        elif var in roles.zero:
            keep = region
        else:
            keep = below
        out[var] = alpha[var] & keep
    return out


def one_step_sim(alpha, beta, region, roles, tree):
    """Whether ``beta`` dominates ``alpha`` where the roles make it matter."""
    _require(alpha, roles)
    _require(beta, roles)
    below = tree.post(region)
    for var in roles.zero:
        if alpha[var] & region & ~beta[var]:
            return False
    for var in roles.one:
        if alpha[var] & below & ~beta[var]:
            return False
    return True


def post(tree, mask):
    return tree.post(mask)
