"""Extended-precision reals and the gamma family.

All real quantities are :class:`mpmath.mpf` values.  The *digit budget*
is the number of significant decimal digits a top-level evaluation must
deliver; internally a computation may run at a higher working precision
(see :func:`escalate`) when an alternating sum cancels.

Low-level helpers in this module (``pochhammer``, ``gamma_fn`` ...) work at
whatever precision is currently active in ``mpmath.mp``; callers wrap them
in :func:`working_digits`.
"""

from __future__ import annotations

import math
import os
from contextlib import contextmanager
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from numbers import Integral, Rational

import mpmath
from mpmath import mp, mpf

from .errors import PoleError, PrecisionExhausted

Real = mpf

DIGITS_ENV = "GEGENORM_DIGITS"
MAX_DIGITS_ENV = "GEGENORM_MAX_DIGITS"

#: digits that must survive cancellation in a single sum before it is rejected
GUARD_DIGITS = 12

_default_digits = int(os.environ.get(DIGITS_ENV, "40"))
_max_digits = int(os.environ.get(MAX_DIGITS_ENV, "20000"))


def get_default_digits() -> int:
    return _default_digits


def set_default_digits(digits: int) -> None:
    global _default_digits
    if digits < 15:
        raise ValueError("digit budget must be at least 15")
    _default_digits = int(digits)


def get_max_digits() -> int:
    return _max_digits


def set_max_digits(digits: int) -> None:
    global _max_digits
    _max_digits = int(digits)


def resolve_digits(digits: int | None) -> int:
    return _default_digits if digits is None else int(digits)


@contextmanager
def working_digits(digits: int):
    """Run the enclosed block with ``mp.dps = digits``."""
    with mp.workdps(digits):
        yield


def to_real(x) -> mpf:
    """Convert ``x`` to an mpf at the active precision.

    Fractions are divided at full precision, so ``Fraction(3, 10)`` gives
    the correctly rounded 0.3 at every working precision.
    """
    if isinstance(x, mpf):
        return +x
    if isinstance(x, bool):
        raise TypeError("bool is not a real parameter")
    if isinstance(x, Integral):
        return mpf(int(x))
    if isinstance(x, Rational):
        return mpf(x.numerator) / x.denominator
    if isinstance(x, Decimal):
        return mpf(str(x))
    return mpf(x)


def is_exact(x) -> bool:
    """Exact-rational inputs (ints and Fractions) carry exact tags."""
    return isinstance(x, (Integral, Fraction)) and not isinstance(x, bool)


def exact_value(x) -> Fraction | None:
    return Fraction(x) if is_exact(x) else None


def to_decimal_string(x, digits: int | None = None) -> str:
    """Decimal string of ``x``.

    With ``digits=None`` enough digits are printed for an exact round trip
    at the binary precision ``x`` was computed at.
    """
    x = mpf(x)
    if digits is None:
        digits = mpmath.libmp.repr_dps(mp.prec)
    return mpmath.libmp.to_str(x._mpf_, digits)


def from_decimal_string(s: str) -> mpf:
    return mpf(s)


def euler_gamma() -> mpf:
    return +mp.euler


def _is_nonpositive_integer(x: mpf) -> bool:
    return x <= 0 and x == mpmath.floor(x)


def gamma_fn(x) -> mpf:
    x = to_real(x)
    if _is_nonpositive_integer(x):
        raise PoleError(f"gamma has a pole at {x}")
    return mp.gamma(x)


def rgamma(x) -> mpf:
    """1/Γ(x), which is zero (not an error) at the poles of Γ."""
    return mp.rgamma(to_real(x))


def log_gamma(x) -> mpf:
    """log|Γ(x)|; negative non-integer arguments go through reflection."""
    x = to_real(x)
    if _is_nonpositive_integer(x):
        raise PoleError(f"gamma has a pole at {x}")
    if x > 0:
        return mp.loggamma(x)
    # Γ(x)Γ(1-x) = π / sin(πx)
    return mp.log(mp.pi / abs(mp.sinpi(x))) - mp.loggamma(1 - x)


def gamma_sign(x) -> int:
    x = to_real(x)
    if _is_nonpositive_integer(x):
        raise PoleError(f"gamma has a pole at {x}")
    if x > 0:
        return 1
    return -1 if int(mpmath.floor(-x)) % 2 == 0 else 1


def digamma(x) -> mpf:
    x = to_real(x)
    if _is_nonpositive_integer(x):
        raise PoleError(f"digamma has a pole at {x}")
    return mp.digamma(x)


_PRODUCT_LIMIT = 64


def pochhammer(a, k: int) -> mpf:
    """Rising factorial (a)_k, with (a)_{-k} = (-1)^k / (1-a)_k."""
    a = to_real(a)
    k = int(k)
    if k < 0:
        denom = pochhammer(1 - a, -k)
        if denom == 0:
            raise PoleError(f"({a})_{k} hits a gamma pole")
        return (-1) ** (-k) / denom
    if k <= _PRODUCT_LIMIT:
        p = mpf(1)
        for j in range(k):
            p *= a + j
        return p
    if _is_nonpositive_integer(a):
        if a + k > 0:
            return mpf(0)
        # (a)_k = (-1)^k (-a)! / (-a-k)!
        m = int(-a)
        return (-1) ** k * mp.factorial(m) / mp.factorial(m - k)
    if _is_nonpositive_integer(a + k):
        raise PoleError(f"({a})_{k} via gamma quotient hits a pole")
    return mp.gamma(a + k) * mp.rgamma(a)


def binomial_real(top, n: int) -> mpf:
    """Γ(top+1) / (Γ(n+1) Γ(top-n+1)) for integer n >= 0 and real top."""
    if n < 0:
        raise ValueError("binomial_real needs n >= 0")
    top = to_real(top)
    if n <= _PRODUCT_LIMIT:
        p = mpf(1)
        for j in range(n):
            p *= top - j
        return p / mp.factorial(n)
    if top == mpmath.floor(top):
        t = int(top)
        if t >= 0:
            return mpf(0) if n > t else mp.binomial(t, n)
        # binom(-j, n) = (-1)^n binom(j+n-1, n)
        return (-1) ** n * binomial_real(n - t - 1, n)
    return mp.gamma(top + 1) * mp.rgamma(n + 1) * mp.rgamma(top - n + 1)


def harmonic(n: int) -> mpf:
    """Σ_{k=1}^{n-1} 1/k, i.e. ψ(n) + γ."""
    if n < 1:
        raise ValueError("harmonic needs n >= 1")
    if n > 2000:
        return mp.digamma(n) + mp.euler
    acc = CompensatedSum()
    for k in range(1, n):
        acc.add(mpf(1) / k)
    return acc.value


@dataclass(frozen=True)
class CancellationReport:
    """How much of a sum was lost to cancellation."""

    max_abs_term: mpf
    result_abs: mpf

    @property
    def digits_lost(self) -> float:
        if self.max_abs_term == 0:
            return 0.0
        if self.result_abs == 0:
            return math.inf
        lost = float(mp.log10(self.max_abs_term / self.result_abs))
        return max(lost, 0.0)

    def merge(self, other: "CancellationReport") -> "CancellationReport":
        """Keep whichever of two reports is worse."""
        return self if self.digits_lost >= other.digits_lost else other

    @classmethod
    def exact(cls, value) -> "CancellationReport":
        """Report for a value obtained without summing signed terms."""
        v = abs(mpf(value))
        return cls(v, v)


class CompensatedSum:
    """Neumaier summation of mpf terms, tracking the largest term."""

    __slots__ = ("_s", "_c", "max_abs_term")

    def __init__(self):
        self._s = mpf(0)
        self._c = mpf(0)
        self.max_abs_term = mpf(0)

    def add(self, x) -> None:
        ax = abs(x)
        if ax > self.max_abs_term:
            self.max_abs_term = ax
        s = self._s
        t = s + x
        if abs(s) >= ax:
            self._c += (s - t) + x
        else:
            self._c += (x - t) + s
        self._s = t

    @property
    def value(self) -> mpf:
        return self._s + self._c

    def report(self) -> CancellationReport:
        return CancellationReport(self.max_abs_term, abs(self.value))


def guard(report: CancellationReport, digits: int | None = None) -> None:
    """Raise PrecisionExhausted if fewer than GUARD_DIGITS digits survived."""
    if digits is None:
        digits = mp.dps
    if report.digits_lost > digits - GUARD_DIGITS:
        raise PrecisionExhausted(
            f"sum lost {report.digits_lost:.1f} of {digits} digits to cancellation",
            report=report,
            digits=digits,
        )


def escalate(compute, digits: int | None = None, max_digits: int | None = None):
    """Evaluate ``compute()`` at rising working precision until it is trusted.

    ``compute`` takes no arguments, runs at the active mp precision and
    returns ``(value, report)``.  A result is accepted when at least
    ``digits`` + 5 digits survive its cancellation.  Returns
    ``(value, report, working_digits)`` with ``value`` rounded to ``digits``.
    """
    digits = resolve_digits(digits)
    max_digits = _max_digits if max_digits is None else max_digits
    work = digits + 5
    while True:
        with mp.workdps(work):
            try:
                value, report = compute()
                lost = report.digits_lost
                trusted = lost <= work - digits - 5
            except PrecisionExhausted as exc:
                report = exc.report
                lost = None
                trusted = False
        if trusted:
            with mp.workdps(digits):
                return +value, report, work
        if lost is None or not math.isfinite(lost):
            nxt = 2 * work
        else:
            nxt = max(int(math.ceil(lost)) + digits + 15, work + 10)
        if nxt > max_digits:
            raise PrecisionExhausted(
                f"needs more than {max_digits} working digits", report=report, digits=work
            )
        work = nxt
