"""Exception hierarchy shared by all modules."""


class StabSpecError(Exception):
    """Base class for every error raised by this package."""


class DomainError(StabSpecError, ValueError):
    """Argument outside the region where the quantity is defined."""


class QuadrantError(DomainError):
    """Coefficient index lies in the wrong quadrant for the requested formula."""


class PoleError(StabSpecError, ZeroDivisionError):
    """A denominator parameter hit a nonpositive integer before termination."""


class RangeError(StabSpecError, OverflowError):
    """Result does not fit in the working precision."""


class ResolutionError(StabSpecError, ValueError):
    """Quadrature grid too coarse for the requested Fourier index."""


class ConvergenceError(StabSpecError, ArithmeticError):
    """A series failed to meet its tolerance within the term budget."""


class GridSizeError(StabSpecError, ValueError):
    """Requested table exceeds the memory guard."""
