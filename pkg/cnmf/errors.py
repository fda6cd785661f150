"""
CNMF Toolkit - Errors

Every failure the package raises on purpose derives from CnmfError.
NNLS non-convergence is not an error: it travels as a flag.
"""


class CnmfError(Exception):
    """Base class for toolkit errors."""


class InvalidInputError(CnmfError, ValueError):
    """Shapes, dimensions or values violate an operation's preconditions."""


class OracleTooLargeError(InvalidInputError):
    """A verification oracle was asked to materialize too large an operator."""


class MatrixFormatError(CnmfError):
    """A matrix or trace file could not be parsed."""


class SolverError(CnmfError):
    """A solver broke one of its own invariants (e.g. produced a negative factor)."""
