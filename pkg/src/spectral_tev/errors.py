"""Exception hierarchy shared by the solver modules."""


class TevError(Exception):
    """Base class for all errors raised by this package."""


class NonVanishingError(TevError, ValueError):
    """A polynomial expected to vanish at t = -1 does not."""


class TooSmallError(TevError, ValueError):
    """Truncation degree too small to build the requested basis."""


class NotDefiniteError(TevError):
    """The right-hand matrix of a symmetric pencil is not positive definite."""


class NoConvergenceError(TevError):
    """A dense eigensolver failed to converge."""


class ContrastViolation(TevError, ValueError):
    """The refractive index is not bounded away from 1 on the whole radius."""


class OutOfRangeError(TevError, ValueError):
    """Argument outside the supported range of a closed-form table."""
