"""Exception types shared across the package."""


class PaleyError(ValueError):
    """Base class for invalid-input errors raised by this package."""


class CompositeP(PaleyError):
    pass


class SizeExceeded(PaleyError):
    pass


class ZeroInverse(PaleyError, ZeroDivisionError):
    pass


class ZeroArgument(PaleyError):
    pass


class BadK(PaleyError):
    pass


class PreconditionViolated(PaleyError):
    pass


class BadCongruence(PaleyError):
    pass


class NotAnEdge(PaleyError):
    pass


class DegenerateN1(PreconditionViolated):
    """Sorting cells need n >= 2; GF(p) has no nonzero coordinate tails."""


class DisconnectedPair(PaleyError):
    pass


class CacheInvalid(PaleyError):
    pass


class HypothesisNotClaimed(UserWarning):
    """The closed curvature formula was evaluated outside k | (q-1)/(p-1)."""
