"""Exception types shared across the package."""

__all__ = ["PoleEvaluationError", "ReductionError", "ShapeError"]


class ShapeError(ValueError):
    """Matrices passed to a constructor or operation do not fit together."""


class PoleEvaluationError(ArithmeticError):
    """A point evaluation landed on (or numerically at) a pole."""


class ReductionError(RuntimeError):
    """An orthogonal reduction could not complete consistently.

    Raised when rank decisions contradict each other (usually a sign that
    the tolerance is unsuitable for the data) or when a pencil that must
    be regular turns out not to be.
    """
