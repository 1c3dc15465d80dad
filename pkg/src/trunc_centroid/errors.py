"""Exception types shared across the package.

Every error raised on purpose derives from TruncCentroidError so callers
can catch one type at the boundary.  The CLI maps these to exit code 1;
argument-parsing problems are a separate path (exit code 2).
"""

from __future__ import annotations


class TruncCentroidError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(TruncCentroidError):
    """An input value is outside the mathematical domain (NaN, infinity)."""


class ParameterError(TruncCentroidError):
    """A parameter is structurally invalid (sigma <= 0, n < 1, bad config)."""


class IntervalError(TruncCentroidError):
    """The excluded interval is empty or degenerate (upper <= lower)."""


class DeepTruncationError(TruncCentroidError):
    """The support carries too little probability mass for the requested
    method to produce a trustworthy answer."""


class ToleranceNotMetError(TruncCentroidError):
    """Quadrature could not certify the requested error bound."""
