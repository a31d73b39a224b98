"""Exceptions raised by the engines."""


class ContactLocError(Exception):
    """Base class."""


class MathPreconditionError(ContactLocError):
    """A mathematical precondition of a formula does not hold."""


class DegenerateCriticalSet(MathPreconditionError):
    """Two circles share a moment value, so the critical set has
    positive-dimensional components."""


class LambdaZero(MathPreconditionError):
    """A localization term has exponent 0 (some critical value is 0)."""


class NonPolynomialResult(ContactLocError):
    """A localization sum failed to cancel to a polynomial."""
