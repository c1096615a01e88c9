"""nu+ invariants, surgery correction terms and the nu+ partial order for
connected sums of L-space knots."""

from .cfk import expr_v_sequence, nu_plus, tau_additive
from .errors import (
    BudgetExceededError,
    ConcordiaError,
    KnotExprError,
    NonStabilizingError,
    NotLSpaceError,
    ParseError,
    UncertifiedAtomError,
)
from .knotexpr import KnotExpr, parse

__version__ = "0.1.0"

__all__ = [
    "KnotExpr",
    "parse",
    "nu_plus",
    "tau_additive",
    "expr_v_sequence",
    "ConcordiaError",
    "KnotExprError",
    "ParseError",
    "UncertifiedAtomError",
    "NotLSpaceError",
    "NonStabilizingError",
    "BudgetExceededError",
]
