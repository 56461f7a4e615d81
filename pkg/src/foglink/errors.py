"""Exception types shared across the package."""


class FoglinkError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(FoglinkError, ValueError):
    """An argument lies outside the validity range of a model or function."""


class BracketError(FoglinkError, ValueError):
    """A root-finding bracket does not enclose a sign change."""


class ConvergenceError(FoglinkError, RuntimeError):
    """An iterative solver failed to reach the requested tolerance.

    Carries the best iterate seen so the caller can inspect how close
    the solver got.
    """

    def __init__(self, message, best_root=None, best_residual=None, iterations=None):
        super().__init__(message)
        self.best_root = best_root
        self.best_residual = best_residual
        self.iterations = iterations


class InfeasibleLinkError(FoglinkError, ValueError):
    """The requested rate cannot be met without numerically absurd transmit power."""


class ConfigError(FoglinkError, ValueError):
    """A configuration file failed to parse or violated a parameter invariant."""


class NumericError(FoglinkError, RuntimeError):
    """A numeric accumulation produced non-finite or self-inconsistent results."""
