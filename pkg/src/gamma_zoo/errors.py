"""Exception hierarchy.

Everything the library raises on purpose derives from :class:`GammaZooError`.
The CLI maps :class:`ArgumentError` to exit code 2 and every
:class:`MathError` to exit code 3.
"""

from __future__ import annotations


class GammaZooError(Exception):
    """Base class for all library errors."""


class ArgumentError(GammaZooError, ValueError):
    """Malformed arguments (bad config, empty sequences, ...)."""


class MathError(GammaZooError, ArithmeticError):
    """Base class for mathematical failures."""


class DomainError(MathError):
    """Argument outside the domain where the requested formula is valid."""


class PoleError(DomainError):
    """Evaluation at (or through) a pole."""


class BudgetExceededError(MathError):
    """Requested accuracy not reached within the work budget.

    ``best_estimate`` carries the last value computed before giving up.
    """

    def __init__(self, message: str, best_estimate=None, err_estimate=None):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.err_estimate = err_estimate


class ContourError(DomainError):
    """The integration contour passes through (or too close to) a zero or pole."""


class UnreliableCountError(MathError):
    """Argument-principle integral too far from an integer to be trusted."""

    def __init__(self, message: str, integral=None, diagnostic=None):
        super().__init__(message)
        self.integral = integral
        self.diagnostic = diagnostic
