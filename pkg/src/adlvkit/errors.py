"""Exception types shared across the package."""


class AdlvError(Exception):
    pass


class PrecisionExhausted(AdlvError, ArithmeticError):
    pass


class DivisionByZero(AdlvError, ZeroDivisionError):
    pass


class SingularBasis(AdlvError, ValueError):
    pass


class AlcoveInsideSubcomplex(AdlvError, ValueError):
    pass


class EmptyADLV(AdlvError, ValueError):
    pass


class CoordinateExcluded(AdlvError, ValueError):
    pass


class InvalidTarget(AdlvError, ValueError):
    pass


class UnsupportedSubgroup(AdlvError, ValueError):
    pass


class InvalidCharacter(AdlvError, ValueError):
    pass
