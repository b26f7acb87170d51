"""Domain exception hierarchy shared by all wenum modules."""


class WenumError(Exception):
    """Base class for all domain errors raised by this package."""


class RankDeficient(WenumError):
    pass


class DimensionMismatch(WenumError):
    pass


class InvalidModulus(WenumError):
    pass


class NotPrime(WenumError):
    pass


class NotQrPrime(WenumError):
    pass


class NonIntegerResult(WenumError):
    pass


class Inconsistent(WenumError):
    pass


class Underflow(WenumError):
    pass


class NegativeCoefficient(WenumError):
    pass


class NotMonomial(WenumError):
    pass


class DivisibilityFailure(WenumError):
    pass


class EmptyInterval(WenumError):
    pass


class BudgetExceeded(WenumError):
    """Raised when an enumeration exceeds its work budget.

    ``context`` optionally names the object (e.g. a fixed subcode) that was
    too large, so callers can supply its data externally and retry.
    """

    def __init__(self, message: str, context: object = None):
        super().__init__(message)
        self.context = context


class NoDisjointForms(WenumError):
    pass


class DecoderViolation(WenumError):
    pass


class SearchExhausted(WenumError):
    pass


class NotCoprime(WenumError):
    pass


class EmptySeedSet(WenumError):
    pass


class SamplerFailure(WenumError):
    pass
