"""Exception types raised across the package."""


class GQMError(Exception):
    """Base class for all errors raised by gqm."""


class InvalidPrime(GQMError, ValueError):
    pass


class InvalidDegree(GQMError, ValueError):
    pass


class FieldTooLarge(GQMError, ValueError):
    pass


class FieldMismatch(GQMError, TypeError):
    """Operands live in different fields (or have different dimensions)."""


class DivisionByZero(GQMError, ZeroDivisionError):
    pass


class InvalidArgs(GQMError, ValueError):
    pass


class InvalidField(GQMError, ValueError):
    """The requested order is not a prime power."""


class ZeroVector(GQMError, ValueError):
    """The zero vector does not represent a state or an outcome."""


class BadIndex(GQMError, IndexError):
    pass


class BadBasis(GQMError, ValueError):
    pass


class OutcomeNotInObservable(GQMError, LookupError):
    pass


class DegenerateObservable(GQMError, ValueError):
    pass


class DegenerateSinglet(GQMError, ValueError):
    pass


class BadObservable(GQMError, ValueError):
    pass


class BadTable(GQMError, ValueError):
    pass


class TooLarge(GQMError, ValueError):
    pass


class AdditionForbidden(GQMError, ArithmeticError):
    """Attempted 1 + 1 (or a superposition) over the field with one element."""


class InternalInvariantViolation(GQMError, AssertionError):
    pass
