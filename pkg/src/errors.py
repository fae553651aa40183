"""Exception hierarchy for the shutter propagation library.

Library code raises these; only ``main.py`` turns them into exit codes.
"""

from typing import Optional, Tuple


class ShutterError(Exception):
    """Base class for every error raised by this package."""


class DomainError(ShutterError, ValueError):
    """Input outside the domain of an operation (t <= 0, non-finite z, ...)."""


class InvalidParameterError(ShutterError, ValueError):
    """A constructor parameter is invalid. ``field`` names the offender."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class DepthUnsupportedError(ShutterError):
    """Requested jet depth exceeds what the packet kind can deliver."""


class UnsupportedKindError(ShutterError):
    """Operation is not defined for this packet kind."""


class PreconditionError(ShutterError, ValueError):
    """Caller broke a documented precondition."""


class SignPatternError(PreconditionError):
    """Boundary points are not ordered or their signs do not alternate."""


class NonConvergenceError(ShutterError, ArithmeticError):
    """A numerical procedure did not reach its tolerance.

    ``estimates`` holds the last two estimates when they exist.
    """

    def __init__(self, message: str, estimates: Optional[Tuple[complex, complex]] = None):
        if estimates is not None:
            message = f"{message} (last estimates: {estimates[0]!r}, {estimates[1]!r})"
        super().__init__(message)
        self.estimates = estimates


class PaddingInsufficientError(NonConvergenceError):
    """Spectral domain too small: wrap-around leakage exceeds the bound."""


class ConfigError(ShutterError):
    """Experiment configuration could not be parsed or validated."""

    def __init__(self, key: str, message: str):
        super().__init__(f"config key '{key}': {message}")
        self.key = key


class JetMismatchError(ShutterError):
    """Two packets expected to share boundary jets do not."""

    def __init__(self, order: int, message: str):
        super().__init__(f"derivative order {order}: {message}")
        self.order = order


class TooFewFringesError(ShutterError):
    """Density window holds too few minima to measure a fringe period."""
