"""Exception types shared across the package."""


class FormalPIError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(FormalPIError, ValueError):
    pass


class DegenerateCriticalPoint(FormalPIError, ArithmeticError):
    """The Hessian at the expansion point is singular."""


class NotCriticalPoint(FormalPIError, ValueError):
    """The first derivative of an action jet does not vanish."""


class NotInvertible(FormalPIError, ArithmeticError):
    """A map jet has a singular linear part."""


class TruncationExceeded(FormalPIError, ValueError):
    """A computation needs Taylor coefficients beyond the stored truncation order."""


class PreconditionError(FormalPIError, ValueError):
    pass


class QuadraturePrecisionError(FormalPIError, RuntimeError):
    """Adaptive quadrature failed to reach the requested accuracy."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}
