"""Exception types shared across the library."""


class EbmspecError(Exception):
    """Base class for all library-specific errors."""


class DomainError(EbmspecError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class GridError(EbmspecError, ValueError):
    """A time grid does not resolve the horizon or the memory length."""


class ShapeError(EbmspecError, ValueError):
    """Coefficient vectors or history stacks have mismatched lengths."""


class ToleranceError(EbmspecError, RuntimeError):
    """Adaptive integration could not reach the requested accuracy."""


class EvalError(EbmspecError, RuntimeError):
    """A user-supplied coefficient function returned an invalid value."""


class SolveError(EbmspecError, RuntimeError):
    """The linear system of a time step could not be factorized."""


class ConfigError(EbmspecError, ValueError):
    """A run configuration failed validation."""
