"""Tree logics workbench: MSO/MTL/MPL, graded mu-calculus, counting CTL*
and its semilattice extension, with translations and brute-force oracles."""
from .concrete import ParseError, parse, show
from .syntax import free_vars, gmc, msol, temporal

__all__ = ["ParseError", "free_vars", "gmc", "msol", "parse", "show", "temporal"]
