"""Exception types raised across the package."""


class DnaRingError(Exception):
    pass


class ParseError(DnaRingError, ValueError):
    pass


class LengthMismatch(DnaRingError, ValueError):
    pass


class NonChainRing(DnaRingError):
    pass


class ConstraintViolation(DnaRingError, ValueError):
    """A Gau map parameter tuple fails one of the fill conditions."""

    def __init__(self, condition, message):
        super().__init__(f"condition {condition}: {message}")
        self.condition = condition


class NotBijective(DnaRingError, ValueError):
    pass


class TooLarge(DnaRingError):
    """An enumeration would exceed the configured guard."""

    def __init__(self, estimate, guard):
        super().__init__(f"enumeration size {estimate} exceeds guard {guard}")
        self.estimate = estimate
        self.guard = guard


class SingletonCode(DnaRingError):
    pass


class NotStandardForm(DnaRingError, ValueError):
    pass


class NotAUnit(DnaRingError, ValueError):
    pass


class InvalidOrder(DnaRingError, ValueError):
    pass


class NotZeroDivisor(DnaRingError, ValueError):
    pass


class UnsupportedTheta(DnaRingError, ValueError):
    pass


class UnsupportedZ(DnaRingError, ValueError):
    pass


class OddLength(DnaRingError, ValueError):
    pass


class RadiusOutOfRange(DnaRingError, ValueError):
    pass
