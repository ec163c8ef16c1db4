"""Asymptotic expansions of I_n^(λ;α,β) and J_n^(λ;μ) for large n.

A local term of the generating function at z = 1 becomes a term of the
coefficient sequence by singularity analysis:

* (1-z)^s            ->  binom(n-s-1, n)
* (1-z)^m log 1/(1-z) ->  (-1)^m m! / (n(n-1)...(n-m))     (n > m)

Both rules are applied exactly as written; binomials are not re-expanded
in powers of 1/n.  Every series is multiplied by C_n^λ(1) = (2λ)_n/n!.
"""

from __future__ import annotations

import math
import time
import warnings
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from . import numerics
from .errors import DomainError, NotReached, PoleError, TruncationWarning
from .exact import evaluate_j, gegenbauer_at_one, in_exact, jn_lambda_minus_k
from .numerics import CompensatedSum, binomial_real, pochhammer
from .params import (
    HALF,
    MU_MINUS_LAMBDA_POS_INT,
    GegenbauerParams,
    JacobiParams,
    add,
    is_tagged,
    parse_value,
    real,
    warn_if_near_nongeneric,
)
from .results import EvalResult

ORIGINS = (
    "JacobiD",
    "JacobiA",
    "JacobiB",
    "GegenA",
    "GegenB",
    "NatLambdaA",
    "NatLambdaB",
    "LambdaMinusK",
)

_H = mpf(1) / 2  # exact at every precision

_LOG_ORIGINS = ("JacobiD", "GegenA", "NatLambdaA", "LambdaMinusK")


@dataclass(frozen=True)
class AsymptoticTerm:
    """One evaluated term: ``value`` ≍ coefficient · n^n_exponent · (log n)^log_power."""

    coefficient: mpf
    n_exponent: mpf
    log_power: int
    origin: str
    index: int = 0
    value: mpf | None = None

    def __post_init__(self):
        if self.origin not in ORIGINS:
            raise ValueError(f"unknown origin {self.origin!r}")
        if self.log_power < 0:
            raise ValueError("log_power must be >= 0")
        if self.log_power and self.origin not in _LOG_ORIGINS:
            raise ValueError("log powers only come from logarithmic singularities")
        if not mp.isfinite(self.coefficient):
            raise ValueError("coefficient must be finite")

    @property
    def key(self):
        return (self.n_exponent, self.log_power)


@dataclass(frozen=True)
class AsymptoticExpansion:
    """Terms ordered by decreasing asymptotic size (exponent, then log power)."""

    terms: tuple
    truncation: int
    n: int

    @property
    def value(self) -> mpf:
        acc = CompensatedSum()
        for t in self.terms:
            acc.add(t.value)
        return acc.value

    def is_ordered(self) -> bool:
        return all(a.key >= b.key for a, b in zip(self.terms, self.terms[1:]))

    def check_decreasing(self) -> bool:
        """True when successive nonzero terms of different order strictly shrink."""
        nonzero = [t for t in self.terms if t.value != 0]
        for a, b in zip(nonzero, nonzero[1:]):
            if a.key != b.key and not abs(b.value) < abs(a.value):
                return False
        return True


def _order_terms(terms, truncation, n):
    terms = sorted(terms, key=lambda t: t.key, reverse=True)
    exp = AsymptoticExpansion(tuple(terms), truncation, n)
    if not exp.check_decreasing():
        warnings.warn(
            f"asymptotic terms do not decrease at n={n} (truncation {truncation}); "
            "the expansion is not yet in its asymptotic regime",
            TruncationWarning,
            stacklevel=3,
        )
    return exp


# transfer rules


def log_transfer(m: int, n: int) -> mpf:
    """[z^n] (1-z)^m log(1/(1-z)) = (-1)^m m! / (n(n-1)...(n-m)) for n > m."""
    if n <= m:
        raise DomainError(f"log transfer needs n > m (n={n}, m={m})")
    falling = mpf(1)
    for j in range(m + 1):
        falling *= n - j
    return (-1) ** m * mp.factorial(m) / falling


def power_transfer(s, n: int) -> mpf:
    """[z^n] (1-z)^s = binom(n-s-1, n)."""
    return binomial_real(n - numerics.to_real(s) - 1, n)


def _prefactor(compute):
    """Evaluate a gamma prefactor, turning poles into DomainError."""
    try:
        value = compute()
    except (PoleError, ZeroDivisionError, ValueError) as exc:
        raise DomainError(f"coefficient prefactor has a pole: {exc}") from exc
    if not mp.isfinite(value):
        raise DomainError("coefficient prefactor has a pole")
    return value


def _gamma(x):
    return numerics.gamma_fn(x)


def _require_generic(params):
    cls = params.classify()
    # at μ = λ+k the B family carries 1/Γ(λ-μ) = 0 and no poles merge, so the series holds
    if not cls.generic and cls.tag != MU_MINUS_LAMBDA_POS_INT:
        raise DomainError(
            f"the generic expansion does not apply: parameters classify as {cls}"
        )
    warn_if_near_nongeneric(params)


# Jacobi weights


def _jacobi_family_sum(first, other, lam, m):
    """ℓ-sum shared by A_m (first=α, other=β) and B_m (first=β, other=α)."""
    acc = CompensatedSum()
    for ell in range(m // 2 + 1):
        acc.add(
            pochhammer(first + 2 - 2 * lam, ell)
            * pochhammer(1 + first - other, 2 * ell)
            * pochhammer(first + 1, m - ell)
            / (
                pochhammer(1 + first - other, ell)
                * pochhammer(2 + first - lam, ell) ** 2
                * mp.factorial(ell)
                * mp.factorial(m - 2 * ell)
            )
            * (-1) ** ell
            / mpf(16) ** ell
        )
    return acc.value


def _jacobi_family_prefactor(first, other, lam):
    return _prefactor(
        lambda: _gamma(lam + _H)
        * _gamma(first + 1)
        * _gamma(lam - first - 1) ** 2
        * numerics.rgamma(2 * lam - first - 1)
        / (mpf(2) ** (3 * first + 4 - other - 2 * lam) * mp.sqrt(mp.pi) * _gamma(lam))
    )


def _check_m(m):
    if m < 0:
        raise ValueError("m must be non-negative")


def jacobi_coefficient_a(p: JacobiParams, m: int) -> mpf:
    """A_m: coefficient of (1-z)^(m+2+2α-2λ) in the local expansion at z = 1."""
    _check_m(m)
    _require_generic(p)
    lam, a, b = p.lam_r, p.alpha_r, p.beta_r
    return _jacobi_family_prefactor(a, b, lam) * _jacobi_family_sum(a, b, lam, m)


def jacobi_coefficient_b(p: JacobiParams, m: int) -> mpf:
    """B_m: coefficient of (1-z)^(m+2+2β-2λ); equals A_m with α and β swapped."""
    _check_m(m)
    _require_generic(p)
    lam, a, b = p.lam_r, p.alpha_r, p.beta_r
    return _jacobi_family_prefactor(b, a, lam) * _jacobi_family_sum(b, a, lam, m)


def jacobi_coefficient_d(p: JacobiParams, m: int) -> mpf:
    """D_m: coefficient of (1-z)^m log 1/(1-z)."""
    _check_m(m)
    _require_generic(p)
    lam, a, b = p.lam_r, p.alpha_r, p.beta_r
    return _jacobi_d(lam, a, b, m)


def _jacobi_d(lam, a, b, m):
    pref = _prefactor(
        lambda: _gamma(lam + _H)
        * _gamma(a + 1 - lam)
        * _gamma(b + 1 - lam)
        * numerics.rgamma(a + b + 2 - 2 * lam)
        / (mpf(2) ** (2 * lam - a - b - 1) * mp.sqrt(mp.pi) * _gamma(lam))
    )
    acc = CompensatedSum()
    for ell in range(m // 2 + 1):
        acc.add(
            pochhammer(1 - lam, ell)
            * pochhammer(2 * lam - a - b - 1, 2 * ell)
            * pochhammer(lam, m - ell)
            / (
                pochhammer(lam - a, ell)
                * pochhammer(lam - b, ell)
                * mp.factorial(ell) ** 2
                * mp.factorial(m - 2 * ell)
            )
            * (-1) ** ell
            / mpf(16) ** ell
        )
    return pref * acc.value


def _check_truncation(n, M):
    if M < 0:
        raise ValueError("M must be non-negative")
    if n <= M:
        raise DomainError(f"need n > M (n={n}, M={M})")


def in_asymptotic(p: JacobiParams, n: int, M: int, digits: int | None = None):
    """I_n from the D, A and B series truncated after m = M.

    Returns ``(value, expansion)``; the value is rounded to ``digits``.
    """
    _check_truncation(n, M)
    _require_generic(p)
    digits = numerics.resolve_digits(digits)
    with mp.workdps(digits + 15):
        lam, a, b = p.lam_r, p.alpha_r, p.beta_r
        lead = gegenbauer_at_one(lam, n)
        pa = _jacobi_family_prefactor(a, b, lam)
        pb = _jacobi_family_prefactor(b, a, lam)
        terms = []
        for m in range(M + 1):
            d = _jacobi_d(lam, a, b, m)
            terms.append(AsymptoticTerm(d, 2 * lam - 2 - m, 0, "JacobiD", m, lead * d * log_transfer(m, n)))
            am = pa * _jacobi_family_sum(a, b, lam, m)
            terms.append(AsymptoticTerm(
                am, 4 * lam - 2 * a - 4 - m, 0, "JacobiA", m,
                lead * am * binomial_real(n + 2 * lam - 2 * a - 3 - m, n)))
            bm = pb * _jacobi_family_sum(b, a, lam, m)
            terms.append(AsymptoticTerm(
                bm, 4 * lam - 2 * b - 4 - m, 0, "JacobiB", m,
                lead * bm * binomial_real(n + 2 * lam - 2 * b - 3 - m, n)))
        exp = _order_terms(terms, M, n)
        value = exp.value
    with mp.workdps(digits):
        return +value, exp


def jacobi_two_term(p: JacobiParams, n: int) -> mpf:
    """(2λ)_n/n! (D_0/n + A_0 binom(n+2λ-2α-3, n)), no genericity check.

    Near α = λ-1 the two poles cancel and this tends to the log-case
    leading term.
    """
    lam, a, b = p.lam_r, p.alpha_r, p.beta_r
    d0 = _jacobi_d(lam, a, b, 0)
    a0 = _jacobi_family_prefactor(a, b, lam) * _jacobi_family_sum(a, b, lam, 0)
    return gegenbauer_at_one(lam, n) * (d0 / n + a0 * binomial_real(n + 2 * lam - 2 * a - 3, n))


@dataclass(frozen=True)
class LeadingTerm:
    """``value`` = constant · n^exponent · (log n + log_shift)^log_power."""

    value: mpf
    constant: mpf
    exponent: mpf
    case: str
    eta: tuple
    log_power: int = 0
    log_shift: mpf = mpf(0)

    def __iter__(self):
        yield self.value
        yield self.case


def jacobi_log_constant(lam, beta) -> mpf:
    """A(λ,β) = (γ - 4 log 2 + ψ(β+1-λ) + 2ψ(λ)) / 2."""
    lam, beta = numerics.to_real(lam), numerics.to_real(beta)
    return (mp.euler - 4 * mp.log(2) + numerics.digamma(beta + 1 - lam) + 2 * numerics.digamma(lam)) / 2


def _check_leading_n(n):
    if n < 2:
        raise DomainError("leading terms need n >= 2")


def jacobi_leading_term(p: JacobiParams, n: int) -> LeadingTerm:
    """Leading term of I_n in the three regimes α > λ-1, α = λ-1, α < λ-1 (α ≤ β)."""
    _check_leading_n(n)
    if p.alpha > p.beta:
        p = p.swapped()
    if p.symmetric:
        return gegen_leading_term(p.as_gegenbauer(), n)
    warn_if_near_nongeneric(p)
    boundary = add(p.lam, Fraction(-1))
    lam, a, b = p.lam_r, p.alpha_r, p.beta_r
    nn = mpf(n)
    if p.alpha > boundary:
        c = (mpf(2) ** (a + b + 2 - 4 * lam) * _gamma(a + 1 - lam) * _gamma(b + 1 - lam)
             / (_gamma(lam) ** 2 * _gamma(a + b + 2 - 2 * lam)))
        e = 2 * lam - 2
        eta = ((max(2 * lam - 3, 4 * lam - 2 * a - 4), 0),)
        return LeadingTerm(c * nn**e, c, e, "alpha>lambda-1", eta)
    if p.alpha == boundary:
        c = mpf(2) ** (b + 2 - 3 * lam) / _gamma(lam) ** 2
        e = 2 * lam - 2
        shift = -jacobi_log_constant(lam, b)
        eta = ((2 * lam - 3, 1), (4 * lam - 2 * b - 5, 0))
        return LeadingTerm(c * nn**e * (mp.log(nn) + shift), c, e, "alpha=lambda-1", eta, 1, shift)
    c = (mpf(2) ** (b - 3 * a - 3) * _gamma(a + 1) * _gamma(lam - a - 1) ** 2
         / (_gamma(lam) ** 2 * _gamma(2 * lam - a - 1)))
    e = 4 * lam - 2 * a - 4
    eta = ((max(2 * lam - 2, 4 * lam - 2 * a - 5, 4 * lam - 2 * b - 4), 0),)
    return LeadingTerm(c * nn**e, c, e, "alpha<lambda-1", eta)


# Gegenbauer weights


def _gegen_a_sum(lam, mu, m):
    acc = CompensatedSum()
    for ell in range(m // 2 + 1):
        acc.add(
            pochhammer(1 - lam, ell) * pochhammer(lam - mu, ell) * pochhammer(lam, m - ell)
            / (pochhammer(_H + lam - mu, ell) * mp.factorial(ell) ** 2 * mp.factorial(m - 2 * ell))
            * (-1) ** ell / mpf(4) ** ell
        )
    return acc.value


def _gegen_b_sum(lam, mu, m):
    h = _H
    acc = CompensatedSum()
    for ell in range(m // 2 + 1):
        acc.add(
            pochhammer(h, ell) * pochhammer(3 * h + mu - 2 * lam, ell) * pochhammer(mu + h, m - ell)
            / (pochhammer(3 * h + mu - lam, ell) ** 2 * mp.factorial(ell) * mp.factorial(m - 2 * ell))
            * (-1) ** ell / mpf(4) ** ell
        )
    return acc.value


def _gegen_a_prefactor(lam, mu):
    h = _H
    return _prefactor(lambda: _gamma(lam + h) * _gamma(h + mu - lam) * numerics.rgamma(1 + mu - lam) / _gamma(lam))


def _gegen_b_prefactor(lam, mu):
    h = _H
    return _prefactor(
        lambda: _gamma(lam + h) * _gamma(lam - mu - h) ** 2 * _gamma(mu + h)
        * numerics.rgamma(2 * lam - mu - h)
        / (mpf(4) ** (1 + mu - lam) * mp.sqrt(mp.pi) * _gamma(lam))
    )


def gegen_coefficient_a(g: GegenbauerParams, m: int) -> mpf:
    """A_m: coefficient of (1-z)^m log 1/(1-z) for the Gegenbauer weight."""
    _check_m(m)
    _require_generic(g)
    lam, mu = g.lam_r, g.mu_r
    return _gegen_a_prefactor(lam, mu) * _gegen_a_sum(lam, mu, m)


def gegen_coefficient_b(g: GegenbauerParams, m: int) -> mpf:
    """B_m: coefficient of (1-z)^(1+2μ-2λ+m)."""
    _check_m(m)
    _require_generic(g)
    lam, mu = g.lam_r, g.mu_r
    return _gegen_b_prefactor(lam, mu) * _gegen_b_sum(lam, mu, m)


def _two_family_series(lam, mu_shift, a_coeffs, b_coeffs, a_origin, b_origin, n, M):
    """(2λ)_n/n! (Σ A_m log-transfer + Σ B_m binom(n + 2λ - 2μ - 2 - m, n))."""
    lead = gegenbauer_at_one(lam, n)
    terms = []
    for m in range(M + 1):
        am, bm = a_coeffs[m], b_coeffs[m]
        terms.append(AsymptoticTerm(am, 2 * lam - 2 - m, 0, a_origin, m, lead * am * log_transfer(m, n)))
        terms.append(AsymptoticTerm(
            bm, 4 * lam - 2 * mu_shift - 3 - m, 0, b_origin, m,
            lead * bm * binomial_real(n + 2 * lam - 2 * mu_shift - 2 - m, n)))
    return _order_terms(terms, M, n)


def jn_asymptotic(g: GegenbauerParams, n: int, M: int, digits: int | None = None):
    """J_n from the generic two-family series truncated after m = M."""
    _check_truncation(n, M)
    _require_generic(g)
    digits = numerics.resolve_digits(digits)
    with mp.workdps(digits + 15):
        lam, mu = g.lam_r, g.mu_r
        pa, pb = _gegen_a_prefactor(lam, mu), _gegen_b_prefactor(lam, mu)
        a = [pa * _gegen_a_sum(lam, mu, m) for m in range(M + 1)]
        b = [pb * _gegen_b_sum(lam, mu, m) for m in range(M + 1)]
        exp = _two_family_series(lam, mu, a, b, "GegenA", "GegenB", n, M)
        value = exp.value
    with mp.workdps(digits):
        return +value, exp


def gegen_leading_term(g: GegenbauerParams, n: int) -> LeadingTerm:
    """Leading term of J_n in the regimes μ > λ-1/2, μ = λ-1/2, μ < λ-1/2."""
    _check_leading_n(n)
    warn_if_near_nongeneric(g)
    boundary = add(g.lam, -HALF)
    lam, mu = g.lam_r, g.mu_r
    h = _H
    nn = mpf(n)
    if g.mu > boundary:
        c = (mp.sqrt(mp.pi) * _gamma(mu + h - lam)
             / (mpf(2) ** (2 * lam - 1) * _gamma(lam) ** 2 * _gamma(mu + 1 - lam)))
        e = 2 * lam - 2
        eta = ((max(2 * lam - 3, 4 * lam - 2 * mu - 3), 0),)
        return LeadingTerm(c * nn**e, c, e, "mu>lambda-1/2", eta)
    if g.mu == boundary:
        c = 1 / (mpf(2) ** (2 * lam - 2) * _gamma(lam) ** 2)
        e = 2 * lam - 2
        shift = 2 * mp.log(2) - numerics.digamma(lam)
        eta = ((2 * lam - 3, 1),)
        return LeadingTerm(c * nn**e * (mp.log(nn) + shift), c, e, "mu=lambda-1/2", eta, 1, shift)
    c = (mp.sqrt(mp.pi) * _gamma(lam - mu - h) * _gamma(mu + h)
         / (mpf(2) ** (2 * lam - 1) * _gamma(lam) ** 2 * _gamma(lam - mu) * _gamma(2 * lam - mu - h)))
    e = 4 * lam - 2 * mu - 3
    eta = ((max(2 * lam - 2, 4 * lam - 2 * mu - 4), 0),)
    return LeadingTerm(c * nn**e, c, e, "mu<lambda-1/2", eta)


def jn_lambda_minus_k_leading(lam, k: int, n: int) -> LeadingTerm:
    """Main term of J_n^(λ;λ-k), of order n^(2λ+2k-3)."""
    lam = parse_value(lam)
    if k < 1:
        raise DomainError("k must be >= 1")
    if not add(lam, Fraction(-k)) > Fraction(-1, 2):
        raise DomainError(f"need lambda - k > -1/2, got lambda={lam}, k={k}")
    lr = real(lam)
    h = _H
    c = (mp.sqrt(mp.pi) * _gamma(k - h) * _gamma(h + lr - k)
         / (mpf(2) ** (2 * lr - 1) * _gamma(lr) ** 2 * mp.factorial(k - 1) * _gamma(k + lr - h)))
    e = 2 * lr + 2 * k - 3
    return LeadingTerm(c * mpf(n) ** e, c, e, "lambda-mu=k", ((e - 1, 0),))


def jn_lambda_plus_k_leading(lam, k: int, n: int) -> LeadingTerm:
    """Main term 2π binom(2k,k)/(4^(λ+k) Γ(λ)²) n^(2λ-2) of J_n^(λ;λ+k)."""
    if k < 0:
        raise DomainError("k must be >= 0")
    lr = real(parse_value(lam))
    c = 2 * mp.pi * math.comb(2 * k, k) / (mpf(4) ** (lr + k) * _gamma(lr) ** 2)
    e = 2 * lr - 2
    return LeadingTerm(c * mpf(n) ** e, c, e, "mu-lambda=k", ((e - 1, 0),))


# λ = k a positive integer, μ and 2μ not integers


def _check_nat(k, mu):
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise DomainError("lambda must be a positive integer")
    mu = parse_value(mu)
    if not mu > Fraction(-1, 2):
        raise DomainError("mu must exceed -1/2")
    if (2 * mu) == int(2 * mu):
        raise DomainError("mu and 2 mu must not be integers")
    return mu


def _nat_a_prefactor(k, mu):
    h = _H
    return (mp.sqrt(mp.pi) * _gamma(mu + h) / _gamma(mu + 1)
            * pochhammer(h, k) * pochhammer(-mu, k) / (_gamma(k) * pochhammer(h - mu, k)))


def _nat_b_prefactor(k, mu):
    h = _H
    return (mpf(2) ** (2 * k - 2 * mu - 2) * _gamma(-h - mu) * _gamma(mu + h)
            * pochhammer(h, k) * pochhammer(-h - mu, k) ** 2 / (_gamma(k) * pochhammer(-h - mu, 2 * k)))


def _nat_a_sum(k, mu, m):
    acc = CompensatedSum()
    for ell in range(min(m // 2, k - 1) + 1):
        acc.add(
            pochhammer(1 - k, ell) * pochhammer(k - mu, ell) * pochhammer(k, m - ell)
            / (pochhammer(k + _H - mu, ell) * mp.factorial(ell) ** 2 * mp.factorial(m - 2 * ell))
            * (-1) ** ell / mpf(4) ** ell
        )
    return acc.value


def nat_lambda_coefficients(k: int, mu, m: int):
    """(A_m, B_m) of the local expansion at z = 1 when λ = k is a positive integer."""
    _check_m(m)
    mu = _check_nat(k, mu)
    mr = real(mu)
    a = _nat_a_prefactor(k, mr) * _nat_a_sum(k, mr, m)
    b = _nat_b_prefactor(k, mr) * _gegen_b_sum(mpf(k), mr, m)
    return a, b


def jn_nat_lambda_asymptotic(k: int, mu, n: int, M: int, digits: int | None = None):
    """J_n^(k;μ) from the integer-λ series truncated after m = M."""
    _check_truncation(n, M)
    mu = _check_nat(k, mu)
    digits = numerics.resolve_digits(digits)
    with mp.workdps(digits + 15):
        mr = real(mu)
        pa, pb = _nat_a_prefactor(k, mr), _nat_b_prefactor(k, mr)
        a = [pa * _nat_a_sum(k, mr, m) for m in range(M + 1)]
        b = [pb * _gegen_b_sum(mpf(k), mr, m) for m in range(M + 1)]
        exp = _two_family_series(mpf(k), mr, a, b, "NatLambdaA", "NatLambdaB", n, M)
        value = exp.value
    with mp.workdps(digits):
        return +value, exp


# routing shared by the CLI and the crossover search


def asymptotic_value(params, n: int, M: int, digits: int | None = None):
    """Best available M-term expansion for the parameter point."""
    if isinstance(params, GegenbauerParams):
        if is_tagged(params.lam) and params.lam.denominator == 1:
            try:
                return jn_nat_lambda_asymptotic(int(params.lam), params.mu, n, M, digits)
            except DomainError:
                pass
        return jn_asymptotic(params, n, M, digits)
    return in_asymptotic(params, n, M, digits)


def first_omitted_exponent(exp: AsymptoticExpansion) -> mpf:
    """Order of the largest term left out; each family drops by one per m."""
    return max(t.n_exponent for t in exp.terms if t.index == exp.truncation) - 1


def asymptotic_result(params, n: int, M: int, digits: int | None = None) -> EvalResult:
    digits = numerics.resolve_digits(digits)
    value, exp = asymptotic_value(params, n, M, digits)
    return EvalResult(
        value=value,
        method="asymptotic",
        params=params.to_dict(),
        n=n,
        digits=digits,
        classification=str(params.classify()),
        terms=M,
        eta=((first_omitted_exponent(exp), 0),),
    )


def leading_result(params, n: int, digits: int | None = None) -> EvalResult:
    digits = numerics.resolve_digits(digits)
    with mp.workdps(digits + 10):
        if isinstance(params, GegenbauerParams):
            lt = gegen_leading_term(params, n)
        else:
            lt = jacobi_leading_term(params, n)
    with mp.workdps(digits):
        value = +lt.value
    return EvalResult(
        value=value,
        method="leadingTerm",
        params=params.to_dict(),
        n=n,
        digits=digits,
        classification=str(params.classify()),
        eta=lt.eta,
        extra={"case": lt.case},
    )


def exact_value(params, n: int, digits: int | None = None) -> EvalResult:
    if isinstance(params, GegenbauerParams):
        return evaluate_j(params, n, digits)
    if params.symmetric:
        return evaluate_j(params.as_gegenbauer(), n, digits)
    return in_exact(params, n, digits)


@dataclass(frozen=True)
class Crossover:
    n: int
    relative_error: mpf
    time_ratio: float


CROSSOVER_LIMIT = 2**20


def crossover(params, tol, M: int, digits: int | None = None, limit: int = CROSSOVER_LIMIT) -> Crossover:
    """Smallest n with |asymptotic_M - exact| / exact <= tol.

    The search doubles n from M+1 and then bisects, which assumes the
    relative error is eventually decreasing in n.
    """
    tol = mpf(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    digits = numerics.resolve_digits(digits)

    def rel_error(n):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", TruncationWarning)
            approx, _ = asymptotic_value(params, n, M, digits)
        exact = exact_value(params, n, digits).value
        with mp.workdps(digits):
            return abs(approx - exact) / abs(exact)

    lo = M + 1
    if rel_error(lo) <= tol:
        hit = lo
    else:
        hi = max(lo + 1, 2 * lo)
        while rel_error(hi) > tol:
            lo, hi = hi, 2 * hi
            if hi > limit:
                raise NotReached(f"relative error still above {tol} at n={limit}")
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if rel_error(mid) <= tol:
                hi = mid
            else:
                lo = mid
        hit = hi
    err = rel_error(hit)
    t0 = time.perf_counter()
    exact_value(params, hit, digits)
    t1 = time.perf_counter()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        asymptotic_value(params, hit, M, digits)
    t2 = time.perf_counter()
    return Crossover(hit, err, (t1 - t0) / max(t2 - t1, 1e-9))


def lambda_minus_k_check(lam, k: int, n: int):
    """Ratio of the exact J_n^(λ;λ-k) to its main term."""
    return jn_lambda_minus_k(lam, k, n).value / jn_lambda_minus_k_leading(lam, k, n).value
