class FramelabError(Exception):
    """Base class for all errors raised by framelab."""


class ChartMismatchError(FramelabError, ValueError):
    pass


class DomainError(FramelabError, ValueError):
    """A point or parameter lies outside the domain where an object is defined."""


class SingularMetricError(FramelabError, ArithmeticError):
    pass


class DegreeError(FramelabError, ValueError):
    pass


class FrameValidationError(FramelabError, ValueError):
    pass


class QuadratureError(FramelabError, ArithmeticError):
    def __init__(self, message: str, achieved_error: float = float("nan")):
        super().__init__(message)
        self.achieved_error = achieved_error


class NullRootError(FramelabError, ArithmeticError):
    """No admissible future-pointing null direction along a path tangent."""


class ConfigError(FramelabError, ValueError):
    pass
