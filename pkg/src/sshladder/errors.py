"""Exception types shared across the package."""


class LadderError(Exception):
    """Base class for all errors raised by this package."""


class InvalidSymmetry(LadderError, ValueError):
    """The requested chiral symmetry does not exist for the given parameters."""


class GaplessSpectrum(LadderError, ArithmeticError):
    """The Bloch spectrum closes on the momentum grid; no invariant is defined."""


class EmptySector(LadderError, ArithmeticError):
    """The (1, 1) particle-number sector has (numerically) zero weight."""


class DimensionMismatch(LadderError, ValueError):
    """Two density matrices of different shape were compared."""


class TooLarge(LadderError, ValueError):
    """The Fock-space oracle was asked for more modes than it supports."""


class NumericalError(LadderError, ArithmeticError):
    """A quantity that must be non-negative came out clearly negative."""


class UnderResolved(LadderError, ArithmeticError):
    """The momentum grid is too coarse to round the winding number reliably."""
