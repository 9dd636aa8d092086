"""Exception types shared across the package."""

from __future__ import annotations


class QuadMapError(Exception):
    """Base class for every domain error raised by this package."""


class DegenerateInput(QuadMapError):
    """A geometric primitive received unusable input (e.g. coincident points)."""


class CoincidentLines(QuadMapError):
    """Two lines that should meet in a single point are the same line."""


class DegenerateQuad(QuadMapError):
    """Four vertices do not form a usable counterclockwise simple quadrilateral."""

    def __init__(self, reason: str, message: str | None = None):
        self.reason = reason
        super().__init__(message or reason)


class MissingPole(QuadMapError):
    """A scheme requires a finite pole but the pole is at infinity."""


class SingularSystem(QuadMapError):
    """The interpolation system cannot be solved.

    Solvability requires a positive determinant of the node matrix; a
    vanishing pivot during factorization means that condition is violated.
    """

    def __init__(self, message: str, cond_estimate: float | None = None):
        self.cond_estimate = cond_estimate
        super().__init__(message)


class SingularJacobian(QuadMapError):
    """The covariant basis is numerically singular at the requested point."""


class NewtonDivergence(QuadMapError):
    """The inverse-map Newton iteration failed to converge."""

    def __init__(self, message: str, iterations: int | None = None):
        self.iterations = iterations
        super().__init__(message)


class ParseError(QuadMapError):
    """A job file is malformed; the message carries line/field context."""
