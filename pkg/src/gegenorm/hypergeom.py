"""Generalized hypergeometric sums pFq.

Terms are generated by multiplying the previous term with the ratio
Π(a_i+k) / Π(b_j+k) · z/(k+1); gamma quotients are never formed per term.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from . import numerics
from .errors import DomainError, NoConvergence, PoleError
from .numerics import CompensatedSum, to_real

SNAP_TOLERANCE = mpf("1e-20")


def _as_nonpositive_integer(a):
    """Return m >= 0 when ``a`` is (or snaps to) the integer -m, else None."""
    if numerics.is_exact(a):
        q = Fraction(a)
        if q.denominator == 1 and q <= 0:
            return int(-q)
        return None
    x = to_real(a)
    r = mp.nint(x)
    if r <= 0 and abs(x - r) <= SNAP_TOLERANCE:
        return int(-r)
    return None


@dataclass(frozen=True)
class PFqSpec:
    """Parameters of pFq(upper; lower; argument).

    Entries may be ints, Fractions, floats, strings or mpf values; they are
    converted at the precision active when the sum is evaluated.
    """

    upper: tuple
    lower: tuple
    argument: object = 1

    def __init__(self, upper, lower, argument=1):
        object.__setattr__(self, "upper", tuple(upper))
        object.__setattr__(self, "lower", tuple(lower))
        object.__setattr__(self, "argument", argument)

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)

    @property
    def terminating_index(self):
        """N such that the series stops after the z^N term, or None."""
        ns = [m for m in map(_as_nonpositive_integer, self.upper) if m is not None]
        return min(ns) if ns else None

    @property
    def terminating(self) -> bool:
        return self.terminating_index is not None


def _snap(a):
    m = _as_nonpositive_integer(a)
    return mpf(-m) if m is not None else to_real(a)


def _series(spec: PFqSpec, stop):
    """Yield successive terms until ``stop(k, term)`` is true."""
    upper = [_snap(a) for a in spec.upper]
    lower = [_snap(b) for b in spec.lower]
    z = to_real(spec.argument)
    term = mpf(1)
    k = 0
    while True:
        yield k, term
        if stop(k, term):
            return
        num = z
        for a in upper:
            num *= a + k
        den = mpf(k + 1)
        for b in lower:
            d = b + k
            if d == 0:
                raise PoleError(f"lower parameter {b} reaches a pole at k={k}")
            den *= d
        term = term * num / den
        k += 1


def eval_terminating(spec: PFqSpec, check: bool = True):
    """Finite sum Σ_{k=0}^{N} of a terminating pFq.

    Returns ``(value, CancellationReport)``.  Raises PrecisionExhausted when
    fewer than GUARD_DIGITS digits survive at the active precision, unless
    ``check`` is false (the caller then judges the report itself).
    """
    n_stop = spec.terminating_index
    if n_stop is None:
        raise DomainError("series does not terminate: no non-positive integer upper parameter")
    acc = CompensatedSum()
    for _, term in _series(spec, lambda k, t: k >= n_stop):
        acc.add(term)
    report = acc.report()
    if check and acc.value != 0:
        # an exactly vanishing compensated sum (integer data) is reported as is
        numerics.guard(report)
    return acc.value, report


def eval_convergent(spec: PFqSpec, tol=None, max_terms: int = 10**6):
    """Partial sums of a convergent pFq.

    Summation stops once three consecutive terms are below ``tol`` relative
    to the running sum (default: one ulp at the active precision).
    """
    if spec.terminating:
        return eval_terminating(spec)
    z = to_real(spec.argument)
    if spec.p > spec.q + 1:
        raise DomainError("p > q+1: the series diverges for z != 0")
    if spec.p == spec.q + 1 and abs(z) >= 1:
        raise DomainError("|z| >= 1 is outside the disk of convergence")
    tol = mpf(2) ** (-mp.prec) if tol is None else to_real(tol)
    return _sum_convergent(spec, tol, max_terms)


def _sum_convergent(spec: PFqSpec, tol, max_terms):
    acc = CompensatedSum()
    small = 0
    z_zero = to_real(spec.argument) == 0
    for k, term in _series(spec, lambda k, t: False):
        acc.add(term)
        if z_zero:
            break
        if abs(term) <= tol * abs(acc.value):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
        if k >= max_terms:
            raise NoConvergence(f"no convergence after {max_terms} terms")
    report = acc.report()
    numerics.guard(report)
    return acc.value, report


def pfaff_saalschutz(n: int, lam) -> mpf:
    """Closed form λ/(n+λ) · n!/(2λ)_n of 3F2(-n, n+2λ, λ; 2λ, λ+1; 1)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    lam = to_real(lam)
    return lam / (n + lam) * mp.factorial(n) / numerics.pochhammer(2 * lam, n)
