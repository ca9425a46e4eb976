"""Exception hierarchy shared by the tuning, harmony and graph modules."""

from __future__ import annotations


class TonnetzLabError(Exception):
    """Base class for every error raised by the package."""


class DomainError(TonnetzLabError, ValueError):
    """Raised when an input violates an operation's preconditions."""


class DegenerateScaleError(DomainError):
    """Raised when two powers of a generator reduce to the same interval."""


class DegenerateChordError(DomainError):
    """Raised when a chord collapses to fewer than three distinct pitches."""


class DegenerateSystemError(TonnetzLabError):
    """Raised when a harmonic system has no usable P/L/R offsets."""


class UnsupportedSizeError(TonnetzLabError):
    """Raised when a graph is beyond the desk-scale search bound."""
