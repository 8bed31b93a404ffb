"""Exception hierarchy shared by all modules."""


class UDRError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(UDRError, ValueError):
    """Invalid input parameters (non-prime modulus, bad ranges, ...)."""


class DomainError(ParameterError):
    pass


class SearchExhaustedError(UDRError):
    pass


class SingularMatrixError(UDRError, ZeroDivisionError):
    pass


class UnsupportedRegimeError(UDRError):
    """The requested computation lies outside the even n, m regime."""


class InconsistentPresentationError(ParameterError):
    """(n, m, alpha, beta, gamma) does not present a group of order 2nm."""


class InvalidRepresentationError(UDRError, ValueError):
    pass


class ReducibleRepresentationError(InvalidRepresentationError):
    pass


class InvalidBaseError(InvalidRepresentationError):
    pass


class ConsistencyError(UDRError):
    """Two independent computations of the same quantity disagree."""


class OutsideRegimeError(UDRError):
    pass


class NotDeterminedError(UDRError):
    pass
