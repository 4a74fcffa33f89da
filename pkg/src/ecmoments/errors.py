"""Shared exception types."""


class EcmomentsError(Exception):
    """Base class for all library errors."""


class NotPrimeError(EcmomentsError, ValueError):
    pass


class ZeroInverse(EcmomentsError, ZeroDivisionError):
    """Tried to invert a residue divisible by p."""


class ZeroPolynomial(EcmomentsError, ValueError):
    pass


class DegreeTooLarge(EcmomentsError, ValueError):
    pass


class AllFibersSingular(EcmomentsError, ValueError):
    """The family's discriminant vanishes identically."""


class NotConvertible(EcmomentsError, ValueError):
    pass


class DegenerateFamily(EcmomentsError, ValueError):
    pass


class CapExceeded(EcmomentsError, ValueError):
    """Prime above the configured cost cap and no override was given."""


class OrderMissing(EcmomentsError, KeyError):
    pass


class OutsideValidity(EcmomentsError, ValueError):
    """Prime outside the validity range of a closed-form predictor."""


class UnknownOracle(EcmomentsError, KeyError):
    pass


class UnknownFamily(EcmomentsError, KeyError):
    pass
