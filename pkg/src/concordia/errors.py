"""Exception hierarchy shared by every module."""

from __future__ import annotations


class ConcordiaError(Exception):
    """Base class for all library errors."""


class KnotExprError(ConcordiaError, ValueError):
    """Malformed or invalid knot expression."""


class ParseError(KnotExprError):
    """Syntax error in the expression language, carrying a 0-based position."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class UncertifiedAtomError(ConcordiaError):
    """An atom lies outside the computable (L-space) universe."""


class NotLSpaceError(ConcordiaError, ValueError):
    """A polynomial does not have the alternating +-1 shape of an L-space knot."""


class NonStabilizingError(ConcordiaError, RuntimeError):
    """V_k changed between truncation depths D and D+4."""


class BudgetExceededError(ConcordiaError):
    """A universe construction would exceed the configured pair budget."""
