class QumetricsError(ValueError):
    """Base class for all errors raised by qumetrics."""


class DimensionMismatchError(QumetricsError):
    def __init__(self, message, shapes=()):
        super().__init__(message)
        self.shapes = tuple(shapes)


class ValidationError(QumetricsError):
    """A matrix violates an invariant of the type it should become.

    ``invariant`` names the violated invariant, ``residual`` is the
    measured violation.
    """

    def __init__(self, invariant, residual, message=None):
        if message is None:
            message = f"{invariant} violated (residual {residual:.6g})"
        super().__init__(message)
        self.invariant = invariant
        self.residual = residual


class NotPositiveSemidefiniteError(ValidationError):
    def __init__(self, eigenvalue, tolerance):
        super().__init__(
            "positive semidefinite",
            -eigenvalue,
            f"positive semidefinite violated: eigenvalue {eigenvalue:.6g} "
            f"is below -{tolerance:.3g}",
        )
        self.eigenvalue = eigenvalue
        self.tolerance = tolerance


class ParseError(QumetricsError):
    def __init__(self, location, field, message):
        super().__init__(f"{location}: field '{field}': {message}")
        self.location = location
        self.field = field


class AlphaRangeError(QumetricsError):
    def __init__(self, alpha):
        super().__init__(f"alpha must lie strictly between 0 and 1, got {alpha!r}")
        self.alpha = alpha


class ConfigurationError(QumetricsError):
    pass


class SolverFailure(QumetricsError, ArithmeticError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class BracketError(QumetricsError, ArithmeticError):
    """The critical alpha function has no sign change on the bracket."""

    def __init__(self, low, high, g_low, g_high):
        super().__init__(
            f"no sign change on [{low:.3g}, {high:.3g}]: "
            f"g({low:.3g}) = {g_low:.6g}, g({high:.3g}) = {g_high:.6g}"
        )
        self.low = low
        self.high = high
        self.g_low = g_low
        self.g_high = g_high
