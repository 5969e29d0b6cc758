"""Exception types raised across the package.

Every error is a ``ValueError`` or ``ArithmeticError`` subclass so callers
that only care about "bad input" versus "numerical failure" can catch the
broad class.
"""


class TwoBandError(Exception):
    """Base class for all package errors."""


class InvalidInput(TwoBandError, ValueError):
    """Input rejected by validation."""


class LengthMismatch(InvalidInput):
    pass


class SignViolation(InvalidInput):
    pass


class BadOffset(InvalidInput):
    pass


class NotSquare(InvalidInput):
    pass


class DimensionMismatch(InvalidInput):
    pass


class SizeMismatch(InvalidInput):
    pass


class NotCoprime(InvalidInput):
    pass


class EmptyBand(InvalidInput):
    """The cyclic form needs both bands populated (the block has m = 0)."""


class TooLarge(InvalidInput):
    """A combinatorial or size guard was exceeded."""


class NumericalError(TwoBandError, ArithmeticError):
    """A computation produced a result that violates a proven property."""


class ShapeMismatch(NumericalError):
    pass


class InconsistentCounts(NumericalError):
    pass


class NoConvergence(NumericalError):
    pass


# the structured path reports oracle trouble under this name
OracleFailure = NoConvergence


class RealityViolation(NumericalError):
    pass


class DistinctnessViolation(NumericalError):
    pass


class NegativeOmega(NumericalError):
    """A D_j eigenvalue that must be positive was not."""
