"""Exception types raised by the library."""


class MehlerHeineError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(MehlerHeineError, ValueError):
    """Invalid family parameter, series parameter, or argument."""


class PoleError(MehlerHeineError, ValueError):
    """Argument sits on a pole (e.g. log-gamma at a nonpositive integer)."""


class DomainError(MehlerHeineError, ValueError):
    """Argument lies outside the region where a formula is valid."""


class ConvergenceError(MehlerHeineError, ArithmeticError):
    """A series or iteration exhausted its budget without converging."""


class PolyOverflowError(MehlerHeineError, OverflowError):
    """An unscaled polynomial value does not fit in binary64.

    Use ``asymptotics.scaled_poly`` for large degrees.
    """


class WindowError(MehlerHeineError, ValueError):
    """A requested zero is not bracketed by the search window."""
