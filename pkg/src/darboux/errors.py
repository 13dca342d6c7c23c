"""Exception hierarchy shared by all modules."""


class DarbouxError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(DarbouxError, ValueError):
    pass


class PoleError(ParameterError):
    pass


class RangeError(ParameterError):
    pass


class BranchCutError(DarbouxError, ValueError):
    pass


class IntegerOrderError(ParameterError):
    pass


class DomainError(DarbouxError, ValueError):
    pass


class ParityError(DomainError):
    pass


class ZeroCrossingError(DarbouxError):
    """The seed solution vanishes (numerically) on the configuration space."""

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class AdmissibilityError(ParameterError):
    def __init__(self, message, beta_c=None):
        super().__init__(message)
        self.beta_c = beta_c


class DegenerateMapError(DarbouxError):
    pass


class ConvergenceError(DarbouxError, ArithmeticError):
    """Iteration limit exceeded; ``partial`` carries whatever did converge."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
