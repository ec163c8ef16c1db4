"""Taylor coefficients of the generating functions of n!/(2λ)_n · I_n.

The coefficients are produced by literal power-series arithmetic: the
inner hypergeometric series is a polynomial in w(z) = -4z/(1-z)², and
since w has valuation 1 only its first N+1 terms reach order N.  The
composition is done by Horner's rule on truncated series, then multiplied
by the binomial series of (1-z)^(-2λ).
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpf

from . import numerics
from .errors import DomainError, PrecisionExhausted
from .exact import _check_lambda_minus_k, _lambda_minus_k_inner, jacobi_mass, lambda_minus_k_prefactor
from .params import GegenbauerParams, JacobiParams, parse_value, real


@dataclass(frozen=True)
class TaylorSeries:
    """Coefficients c_0..c_N of a power series about z = 0."""

    coefficients: tuple
    center: int = 0

    def __post_init__(self):
        if not self.coefficients:
            raise ValueError("a TaylorSeries needs at least one coefficient")

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, n):
        return self.coefficients[n]

    def __len__(self):
        return len(self.coefficients)

    def scaled_values(self, lam):
        """c_n · (2λ)_n/n!, i.e. the represented integrals."""
        lam = numerics.to_real(real(parse_value(lam)))
        out, factor = [], mpf(1)
        for n, c in enumerate(self.coefficients):
            if n:
                factor *= (2 * lam + n - 1) / n
            out.append(c * factor)
        return out


def _mul(a, b, N):
    """Product of two truncated series."""
    out = [mpf(0)] * (N + 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j in range(min(len(b), N + 1 - i)):
            out[i + j] += ai * b[j]
    return out


def _binomial_series(s, N):
    """Coefficients of (1-z)^(-s): (s)_n/n!."""
    out = [mpf(1)]
    for n in range(1, N + 1):
        out.append(out[-1] * (s + n - 1) / n)
    return out


def _compose(upper, lower, N):
    """pFq(upper; lower; w(z)) to order N with w = -4z/(1-z)²."""
    t = [mpf(1)]
    for j in range(N):
        r = mpf(1)
        for a in upper:
            r *= a + j
        for b in lower:
            r /= b + j
        t.append(t[-1] * r / (j + 1))
    w = [mpf(0)] + [-4 * mpf(n) for n in range(1, N + 1)]  # -4z Σ (n+1) z^n
    acc = [t[N]]
    for j in range(N - 1, -1, -1):
        acc = _mul(acc, w, N)
        acc[0] += t[j]
    return acc + [mpf(0)] * (N + 1 - len(acc))


def _with_escalation(build, N, digits):
    """Run ``build`` at twice the budget and confirm against a wider run.

    The two runs differ by ``digits`` extra working digits; their agreement
    bounds the rounding error accumulated by the composition.
    """
    digits = numerics.resolve_digits(digits)
    work = 2 * digits
    while True:
        with mp.workdps(work):
            first = build()
        with mp.workdps(work + digits):
            second = build()
            ok = all(
                abs(a - b) <= abs(b) * mpf(10) ** (-digits - 2)
                for a, b in zip(first, second)
            )
        if ok:
            with mp.workdps(digits):
                return TaylorSeries(tuple(+c for c in second))
        work *= 2
        if work > numerics.get_max_digits():
            raise PrecisionExhausted(f"series composition needs more than {work // 2} digits")


def gen_fn_coefficients_i(p: JacobiParams, N: int, digits: int | None = None) -> TaylorSeries:
    """Taylor coefficients of Σ n!/(2λ)_n I_n z^n up to order N."""
    if N < 0:
        raise ValueError("N must be non-negative")

    def build():
        lam, a, b = p.lam_r, p.alpha_r, p.beta_r
        inner = _compose([lam, lam, a + 1, b + 1], [2 * lam, (a + b + 2) / 2, (a + b + 3) / 2], N)
        series = _mul(_binomial_series(2 * lam, N), inner, N)
        k = jacobi_mass(a, b)
        return [k * c for c in series]

    return _with_escalation(build, N, digits)


def gen_fn_coefficients_j(g: GegenbauerParams, N: int, digits: int | None = None) -> TaylorSeries:
    """Taylor coefficients of Σ n!/(2λ)_n J_n z^n up to order N."""
    if N < 0:
        raise ValueError("N must be non-negative")

    def build():
        lam, mu = g.lam_r, g.mu_r
        half = mpf(1) / 2
        inner = _compose([lam, lam, mu + half], [2 * lam, mu + 1], N)
        series = _mul(_binomial_series(2 * lam, N), inner, N)
        k = mp.sqrt(mp.pi) * mp.gamma(mu + half) * mp.rgamma(mu + 1)
        return [k * c for c in series]

    return _with_escalation(build, N, digits)


def gen_fn_rational_form(lam, k: int, digits: int | None = None):
    """Numerator coefficients p_r (in powers of 1-z) and denominator exponent.

    For μ = λ - k the generating function of n!/(2λ)_n J_n equals
    Σ_{r=0}^{2k-2} p_r (1-z)^r / (1-z)^(2k-1).
    """
    lam = parse_value(lam)
    _check_lambda_minus_k(lam, k)
    digits = numerics.resolve_digits(digits)
    with mp.workdps(digits + 10):
        lr = real(lam)
        pref = lambda_minus_k_prefactor(lr, k)
        coeffs = [pref * _lambda_minus_k_inner(lr, k, r) for r in range(2 * k - 1)]
    with mp.workdps(digits):
        return [+c for c in coeffs], 2 * k - 1


def rational_form_series(numerator, exponent: int, N: int) -> TaylorSeries:
    """Expand Σ p_r (1-z)^r / (1-z)^exponent into Taylor coefficients c_0..c_N."""
    out = [mpf(0)] * (N + 1)
    for r, pr in enumerate(numerator):
        s = exponent - r
        if s <= 0:
            raise DomainError("numerator degree must stay below the denominator exponent")
        for n, b in enumerate(_binomial_series(s, N)):
            out[n] += pr * b
    return TaylorSeries(tuple(out))


def pn_recurrence_residuals(lam, k: int, numerator):
    """Relative residuals of the three-term recurrence for the p_r.

    The sequence is extended by p_r = 0 for r ≥ 2k-1; every index whose
    window touches a nonzero coefficient is checked.
    """
    lr = numerics.to_real(real(parse_value(lam)))
    p = list(numerator) + [mpf(0)] * 3
    out = []
    for n in range(len(numerator)):
        m = 2 - 2 * k + n
        c0 = m * (1 + 2 * lr - 2 * k + n) * (1 + lr - k + n)
        c1 = -(m * (m * (4 + 3 * lr - k + 2 * n) + lr + k + 4 * lr * k) + 2 * lr * k)
        c2 = (3 - 2 * k + n) ** 2 * (2 + n)
        terms = [c0 * p[n], c1 * p[n + 1], c2 * p[n + 2]]
        scale = max(abs(t) for t in terms)
        out.append(abs(sum(terms)) / scale if scale else mpf(0))
    return out
