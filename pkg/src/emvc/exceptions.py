"""Exception hierarchy shared across the package."""


class EMVCError(Exception):
    """Base class for all errors raised by this package."""


class NumericalError(EMVCError, ValueError):
    """Non-finite input or a failed numerical kernel (e.g. SVD)."""


class ShapeError(EMVCError, ValueError):
    """Array shapes are inconsistent with each other."""


class DegenerateScaleError(EMVCError, ValueError):
    """A kernel bandwidth could not be estimated (all points identical)."""


class DegenerateDistributionError(EMVCError, ValueError):
    """A stationary distribution has zero or negative mass somewhere."""


class ConvergenceError(EMVCError, RuntimeError):
    """An iterative method did not reach its tolerance.

    Attributes
    ----------
    residual : float
        The residual at the last iteration.
    """

    def __init__(self, message, residual=float("nan")):
        super().__init__(message)
        self.residual = residual


class ConfigError(EMVCError, ValueError):
    """Invalid configuration or parameter value."""


class SchemaError(EMVCError, ValueError):
    """Input files disagree on layout (e.g. row counts)."""


class ParseError(EMVCError, ValueError):
    """A cell of an input file could not be parsed as a number."""

    def __init__(self, message, row=None, col=None, path=None):
        super().__init__(message)
        self.row = row
        self.col = col
        self.path = path
