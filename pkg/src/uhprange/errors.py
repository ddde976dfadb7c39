"""Exception hierarchy shared across the package."""


class UhprangeError(Exception):
    """Base class for all package-specific errors."""


class DomainError(UhprangeError, ValueError):
    """Evaluation requested outside a function's domain (lower half-plane,
    an atom of the representing measure, a pole, or off every real branch)."""


class PreconditionError(UhprangeError, ValueError):
    """An operation's precondition does not hold, e.g. the linear
    coefficient of the half-plane map is not 1, or a measure has an
    absolutely continuous part where a singular one is required."""


class QuadratureError(UhprangeError, ArithmeticError):
    """Adaptive quadrature exhausted its panel budget before reaching the
    requested tolerance."""


class ConvergenceError(UhprangeError, ArithmeticError):
    """An iterative limit or extrapolation failed its agreement check."""


class UnsupportedStructureError(UhprangeError, ValueError):
    """The real-branch structure of the map cannot be enumerated."""


class WindowError(UhprangeError, ValueError):
    """A Monte Carlo sampling window fails its coverage check."""


class OrbitBreakError(UhprangeError, ArithmeticError):
    """A backward orbit step has no real preimage on the outer branches."""


class ConfigError(UhprangeError, ValueError):
    """Invalid analysis configuration."""
