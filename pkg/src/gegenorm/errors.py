"""Exception and warning classes shared by every module."""


class GegenNormError(Exception):
    """Base class for all errors raised by gegenorm."""


class PoleError(GegenNormError, ZeroDivisionError):
    """A gamma-function pole (or a vanishing Pochhammer denominator) was hit."""


class DomainError(GegenNormError, ValueError):
    """Parameters are outside the region where a formula is valid."""


class PrecisionExhausted(GegenNormError, ArithmeticError):
    """Cancellation ate more digits than the working precision can spare.

    ``report`` carries the :class:`~gegenorm.numerics.CancellationReport`
    of the offending sum when one is available.
    """

    def __init__(self, message, report=None, digits=None):
        super().__init__(message)
        self.report = report
        self.digits = digits


class NoConvergence(GegenNormError, ArithmeticError):
    """A convergent series did not settle within the term cap."""


class ConvergenceError(GegenNormError, ArithmeticError):
    """Newton refinement of quadrature nodes failed."""


class NotReached(GegenNormError, RuntimeError):
    """A crossover search ran past its upper limit for n."""


class TruncationWarning(UserWarning):
    """Terms of an asymptotic expansion do not decrease at the requested n."""


class NonGenericProximityWarning(UserWarning):
    """Floating parameters sit within 1e-6 of a non-generic hyperplane."""
