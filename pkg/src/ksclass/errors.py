"""Exception types raised across the package."""


class KSClassError(Exception):
    """Base class for all package errors."""


class DivisionByNonUnit(KSClassError, ZeroDivisionError):
    pass


class NonDivisibleByZPower(KSClassError, ValueError):
    pass


class PointOutsideDisk(KSClassError, ValueError):
    pass


class InvalidGamma(KSClassError, ValueError):
    pass


class DegenerateParams(KSClassError, ValueError):
    pass


class UnknownCatalogName(KSClassError, KeyError):
    pass


class InvariantViolation(KSClassError, ValueError):
    """A parameter or series violates a documented invariant."""
