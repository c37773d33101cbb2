from . import gmc, msol, temporal


def free_vars(f):
    """``(first-order, second-order or fixpoint)`` free variables of any formula."""
    if isinstance(f, msol.Formula):
        return msol.free_vars(f)
    if isinstance(f, gmc.Formula):
        return frozenset(), gmc.free_vars(f)
    if isinstance(f, temporal.Formula):
        return frozenset(), frozenset()
    raise TypeError(f"not a formula: {f!r}")
