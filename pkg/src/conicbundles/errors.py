"""Domain errors. The CLI reports these by class name with exit status 2."""


class DomainError(Exception):
    """Base class for every mathematical precondition failure."""


class PointNotOnCurve(DomainError):
    pass


class CurveMismatch(DomainError):
    pass


class DivisionByZero(DomainError, ZeroDivisionError):
    pass


class ZeroFunction(DomainError):
    pass


class NonRationalSupport(DomainError):
    """A zero or pole of the function is not an F_p-rational point."""


class NotPrincipal(DomainError):
    pass


class NotInvolution(DomainError):
    pass


class SquareF(DomainError):
    """The function is a square modulo constants where a non-square is required."""


class SearchExhausted(DomainError):
    pass


class PointExhaustion(DomainError):
    pass


class AbstractModeMissingData(DomainError):
    pass


class NotExceptionalInput(DomainError):
    pass


class ContextMismatch(DomainError):
    pass


class InvalidModel(DomainError):
    pass


class MissingAssertion(DomainError):
    pass


class SingularMatrix(DomainError):
    pass


class NotRegular(DomainError, ValueError):
    """Evaluation at a zero or pole."""
