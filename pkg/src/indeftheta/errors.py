"""Exception hierarchy shared by all modules."""


class ThetaError(Exception):
    """Base class for every error raised by this package."""


class InvalidForm(ThetaError, ValueError):
    pass


class NotPositiveCoefficients(InvalidForm):
    pass


class NotIndefinite(InvalidForm):
    pass


class NonIntegralReflection(InvalidForm):
    pass


class SupportNotPreserved(ThetaError, ValueError):
    pass


class NotAdmissible(ThetaError, ValueError):
    pass


class NotOddPrime(ThetaError, ValueError):
    pass


class PrecisionMismatch(ThetaError, ValueError):
    pass


class NonIntegralExponent(ThetaError, ValueError):
    def __init__(self, point, value):
        super().__init__(f"exponent {value} at {point} is not an integer")
        self.point = point
        self.value = value


class AdmissibilityViolation(ThetaError, ValueError):
    def __init__(self, witness):
        super().__init__(f"f(Ax) = f(Bx) = -f(x) fails at x = {witness}")
        self.witness = witness


class InvalidLattice(ThetaError, ValueError):
    pass


class InvalidUnit(ThetaError, ValueError):
    pass


class UnitIsOne(InvalidUnit):
    pass


class IterationExceeded(ThetaError, RuntimeError):
    pass


class VerificationFailed(ThetaError, AssertionError):
    def __init__(self, message, exponent=None):
        super().__init__(message)
        self.exponent = exponent
