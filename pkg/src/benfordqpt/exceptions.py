"""Exception hierarchy shared by every module of the package."""


class BenfordQPTError(Exception):
    """Base class for all errors raised by benfordqpt."""


class DomainError(BenfordQPTError, ValueError):
    """An argument lies outside the domain an operation accepts."""


class QuadratureError(BenfordQPTError, ArithmeticError):
    """The subdivision budget ran out before the error target was met.

    Attributes
    ----------
    estimate : float or ndarray
        Best integral estimate available when the budget ran out.
    error : float
        Largest estimated absolute error among the components.
    """

    def __init__(self, message, estimate, error):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class InvalidMomentsError(BenfordQPTError, ValueError):
    """The four two-site moments do not describe a positive density operator."""


class DegenerateSampleError(BenfordQPTError, ValueError):
    """A sample is constant (max == min) and cannot be shift-scaled."""


class EmptyHistogramError(BenfordQPTError, ValueError):
    """A violation parameter was requested for a histogram with N = 0."""
