"""
Domain exceptions for the degeneration engine.
"""

from typing import Optional


class MustafinError(Exception):
    """Base class for every error raised by the engine."""


class RingMismatchError(MustafinError):
    """Polynomials or ideals from different rings were combined."""


class PolynomialSyntaxError(MustafinError):
    """Polynomial text could not be parsed."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at character {position})")
        self.position = position


class ConfigError(MustafinError):
    """Configuration text could not be turned into a valid run."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        where = ""
        if line is not None:
            where = f"line {line}" if column is None else f"line {line}, column {column}"
            message = f"{where}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


class InvalidInputError(MustafinError):
    """A domain precondition was violated."""


class SingularMatrixError(InvalidInputError):
    """A lattice basis or transition matrix is not invertible."""


class NonHomogeneousError(InvalidInputError):
    """An operation needing multihomogeneous input received something else."""


class ValidationFailure(MustafinError):
    """A decomposition failed its radical-equality check."""


class ClassificationError(MustafinError):
    """Component labels violate a consistency assertion."""


class ComputationTimeout(MustafinError):
    """A Groebner computation exceeded its deadline."""
