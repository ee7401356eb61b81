"""Exception hierarchy shared by all qeuler modules."""


class QEulerError(Exception):
    """Base class for all errors raised by this package."""


class QIsOne(QEulerError):
    """A q-deformed closed form that divides by (1 - q) was asked for q = 1.

    Callers must route q = 1 through the classical (undeformed) path.
    """


class DenominatorDivisibleByP(QEulerError):
    """A rational with p in its denominator cannot be embedded into Z_p."""


class NotCoprime(QEulerError):
    """An argument that must be a p-adic unit is divisible by p."""


class NotOneUnit(QEulerError):
    """The p-adic logarithm needs an argument congruent to 1 modulo p."""


class OutOfDomain(QEulerError):
    """The requested operation would leave Z_p or violates a precondition."""


class PrecisionExhausted(QEulerError):
    """An operation would reduce the guaranteed precision to zero digits."""


class TruncationNotConverged(QEulerError):
    """A truncated p-adic series never reached its stability window."""


class NoConvergence(QEulerError):
    """An archimedean series failed to meet its tail threshold in time."""
