"""Exception hierarchy shared by every module of the package."""


class AugTraceError(Exception):
    """Base class for all errors raised by augtrace."""


class InvalidParameters(AugTraceError, ValueError):
    """Tower or code parameters violate a precondition."""


class NotOddPrime(InvalidParameters):
    pass


class NotDivisor(InvalidParameters):
    pass


class ReducibleModulus(AugTraceError):
    pass


class IncomparableLevels(InvalidParameters):
    """Neither m2 | m1 nor m1 | m2."""


class NotInSubfield(AugTraceError, ValueError):
    pass


class MixedPrimes(AugTraceError, ValueError):
    pass


class DegenerateQuadratic(AugTraceError, ValueError):
    pass


class ZeroDenominator(AugTraceError, ZeroDivisionError):
    pass


class BudgetExceeded(AugTraceError):
    pass


class ZeroCode(AugTraceError, ValueError):
    pass


class AlphabetTooSmall(AugTraceError, ValueError):
    pass


class CodeTooShort(AugTraceError, ValueError):
    """The code has fewer than three coordinates, so no repair group exists."""


class GroupErased(AugTraceError):
    """A repair-group member needed to restore a symbol is itself missing."""


class InternalConsistencyError(AugTraceError, ArithmeticError):
    """A closed form produced a value that should have been integral but was not."""


class DivisionByZero(AugTraceError, ZeroDivisionError):
    pass
