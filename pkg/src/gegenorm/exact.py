"""Closed forms and finite sums for I_n^(λ;α,β) and J_n^(λ;μ).

Every function takes a digit budget (``digits=None`` means the package
default) and returns an :class:`~gegenorm.results.EvalResult` rounded to
that budget.  Alternating sums are re-run at higher working precision
until the budget survives the cancellation.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

import mpmath
from mpmath import mp, mpf

from . import numerics
from .errors import DomainError, PrecisionExhausted
from .hypergeom import PFqSpec, eval_terminating
from .numerics import CancellationReport, CompensatedSum, escalate, pochhammer
from .params import GegenbauerParams, JacobiParams, add, parse_value, real
from .results import EvalResult


def _result(value, method, params, n, digits, report=None, work=None, **kw):
    return EvalResult(
        value=value,
        method=method,
        params=params.to_dict() if hasattr(params, "to_dict") else params,
        n=n,
        digits=digits,
        report=report,
        classification=str(params.classify()) if hasattr(params, "classify") else "Generic",
        working_digits=work,
        **kw,
    )


def jacobi_mass(alpha, beta):
    """∫ (1-x)^α (1+x)^β dx = 2^(α+β+1) Γ(α+1)Γ(β+1)/Γ(α+β+2)."""
    alpha, beta = numerics.to_real(alpha), numerics.to_real(beta)
    return 2 ** (alpha + beta + 1) * mp.gamma(alpha + 1) * mp.gamma(beta + 1) * mp.rgamma(alpha + beta + 2)


def gegenbauer_at_one(lam, n: int):
    """C_n^λ(1) = (2λ)_n / n!."""
    return pochhammer(2 * numerics.to_real(lam), n) / mp.factorial(n)


def _check_n(n):
    if n < 0:
        raise ValueError("n must be non-negative")


def in_exact(p: JacobiParams, n: int, digits: int | None = None) -> EvalResult:
    """I_n from the balanced 5F4 at unit argument."""
    _check_n(n)
    digits = numerics.resolve_digits(digits)

    def compute():
        lam, a, b = p.lam_r, p.alpha_r, p.beta_r
        spec = PFqSpec(
            [-n, n + 2 * lam, lam, a + 1, b + 1],
            [2 * lam, lam + mpf(1) / 2, (a + b + 2) / 2, (a + b + 3) / 2],
        )
        f, report = eval_terminating(spec)
        return jacobi_mass(a, b) * gegenbauer_at_one(lam, n) ** 2 * f, report

    value, report, work = escalate(compute, digits)
    return _result(value, "exact5F4", p, n, digits, report, work)


def jn_exact(g: GegenbauerParams, n: int, digits: int | None = None) -> EvalResult:
    """J_n from the 1-balanced 4F3 at unit argument."""
    _check_n(n)
    digits = numerics.resolve_digits(digits)

    def compute():
        lam, mu = g.lam_r, g.mu_r
        half = mpf(1) / 2
        spec = PFqSpec([-n, n + 2 * lam, lam, mu + half], [2 * lam, lam + half, mu + 1])
        f, report = eval_terminating(spec)
        pref = mp.sqrt(mp.pi) * mp.gamma(mu + half) * mp.rgamma(mu + 1)
        return pref * gegenbauer_at_one(lam, n) ** 2 * f, report

    value, report, work = escalate(compute, digits)
    return _result(value, "exact4F3", g, n, digits, report, work)


def jn_connection(g: GegenbauerParams, n: int, digits: int | None = None) -> EvalResult:
    """J_n from the connection C^λ -> C^μ; every term is positive."""
    _check_n(n)
    if g.mu == 0:
        raise DomainError("the connection formula needs mu != 0")
    digits = numerics.resolve_digits(digits)

    def compute():
        lam, mu = g.lam_r, g.mu_r
        # k = 0 factors, then updated multiplicatively in k
        ratio = pochhammer(lam, n) / pochhammer(mu + 1, n)  # (λ)_{n-k}/(μ+1)_{n-k}
        lm = mpf(1)  # (λ-μ)_k / k!
        tail = pochhammer(2 * mu, n) / mp.factorial(n)  # (2μ)_{n-2k}/(n-2k)!
        acc = CompensatedSum()
        for k in range(n // 2 + 1):
            if k > 0:
                ratio *= (mu + n - k + 1) / (lam + n - k)
                lm *= (lam - mu + k - 1) / k
                j = n - 2 * k
                tail *= (j + 2) * (j + 1) / ((2 * mu + j + 1) * (2 * mu + j))
                if lm == 0:
                    break
            acc.add((ratio * lm) ** 2 * (n + mu - 2 * k) * tail)
        pref = mp.sqrt(mp.pi) * mp.gamma(mu + mpf(1) / 2) / (mu * mp.gamma(mu + 1))
        return pref * acc.value, acc.report()

    value, report, work = escalate(compute, digits)
    return _result(value, "connection", g, n, digits, report, work)


def _recurrence_coefficients(lam, mu, n):
    """(c0, c1, c2) with c0 J_n + c1 J_{n+1} + c2 J_{n+2} = 0."""
    c0 = (n + 2 * lam) ** 2 * (n + 2 * lam - mu)
    c1 = -2 * (n + lam + 1) * (n * n + 2 * (lam + 1) * n + 3 * lam + 1)
    c2 = (n + 2) ** 2 * (n + mu + 2)
    return c0, c1, c2


def recurrence_residual(g: GegenbauerParams, n: int, j0, j1, j2):
    """|c0 J_n + c1 J_{n+1} + c2 J_{n+2}| relative to the largest of the three terms."""
    c0, c1, c2 = _recurrence_coefficients(g.lam_r, g.mu_r, n)
    terms = [c0 * j0, c1 * j1, c2 * j2]
    scale = max(abs(t) for t in terms)
    return abs(mpmath.fsum(terms)) / scale


def jn_recurrence(g: GegenbauerParams, n_max: int, digits: int | None = None) -> list:
    """J_0..J_{n_max} by forward use of the three-term recurrence.

    J_0 and J_1 come from :func:`jn_exact`.  Each result carries an error
    estimate from running the same recurrence in interval arithmetic with
    the starting values widened by one unit in the last budget digit.  No
    claim is made that forward iteration follows a dominant solution.
    """
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    digits = numerics.resolve_digits(digits)
    work = digits + 10
    starts = [jn_exact(g, 0, work).value, jn_exact(g, 1, work).value]
    iv = mpmath.iv
    with mp.workdps(work):
        lam, mu = g.lam_r, g.mu_r
        values = list(starts)
        for n in range(n_max - 1):
            c0, c1, c2 = _recurrence_coefficients(lam, mu, n)
            values.append(-(c0 * values[n] + c1 * values[n + 1]) / c2)
    saved = iv.prec
    iv.dps = work
    try:
        ilam, imu = iv.mpf(g.lam_r), iv.mpf(g.mu_r)
        ulp = iv.mpf(10) ** (1 - digits)
        ivals = [iv.mpf(v) * (1 + iv.mpf([-1, 1]) * ulp) for v in starts]
        for n in range(n_max - 1):
            c0, c1, c2 = _recurrence_coefficients(ilam, imu, n)
            ivals.append(-(c0 * ivals[n] + c1 * ivals[n + 1]) / c2)
        widths = [mpf(v.delta) / 2 for v in ivals]
    finally:
        iv.prec = saved
    results = []
    with mp.workdps(digits):
        for n, (v, w) in enumerate(zip(values, widths)):
            results.append(
                _result(+v, "recurrence", g, n, digits, CancellationReport.exact(v), work,
                        error_estimate=+w)
            )
    return results


def b_coefficient_sum(m: int, eta: int, ell: int) -> Fraction:
    """Σ_{j=ℓ}^{m} binom(2m+η, 2j) binom(j, ℓ) by direct summation."""
    return Fraction(sum(comb(2 * m + eta, 2 * j) * comb(j, ell) for j in range(ell, m + 1)))


def _rising(a: Fraction, k: int) -> Fraction:
    out = Fraction(1)
    for j in range(k):
        out *= a + j
    return out


def b_coefficient(m: int, eta: int, ell: int) -> Fraction:
    """Closed form binom(m,ℓ) (m+η)_{m-ℓ}/(1/2+η)_{m-ℓ} · (1 or 2m+1)."""
    if eta not in (0, 1):
        raise ValueError("eta must be 0 or 1")
    if not 0 <= ell <= m:
        raise ValueError("need 0 <= ell <= m")
    value = comb(m, ell) * _rising(Fraction(m + eta), m - ell) / _rising(Fraction(1, 2) + eta, m - ell)
    return value * (2 * m + 1) if eta else value


def in_via_alpha_beta_connection(p: JacobiParams, n: int, digits: int | None = None) -> EvalResult:
    """I_n^(λ;α,α+k) = Σ_ℓ (-1)^ℓ b_ℓ J_n^(λ;ℓ+α+1/2) for tagged integer k = β-α."""
    _check_n(n)
    k = p.beta_minus_alpha()
    if k is None or k == 0:
        raise DomainError("beta - alpha must be a tagged non-zero integer")
    if k < 0:
        p, k = p.swapped(), -k
    m, eta = divmod(k, 2)
    digits = numerics.resolve_digits(digits)
    coeffs = [(-1) ** ell * b_coefficient(m, eta, ell) for ell in range(m + 1)]
    mus = [parse_value(p.alpha + ell + Fraction(1, 2)) for ell in range(m + 1)]

    def compute():
        acc = CompensatedSum()
        for c, mu in zip(coeffs, mus):
            j = jn_exact(GegenbauerParams(p.lam, mu), n, mp.dps).value
            acc.add(mpf(c.numerator) / c.denominator * j)
        return acc.value, acc.report()

    value, report, work = escalate(compute, digits)
    return _result(value, "connection", p, n, digits, report, work)


def in_via_lambda_rho_connection(p: JacobiParams, rho, n: int, inner, digits: int | None = None) -> EvalResult:
    """I_n^(λ;α,β) as a combination of injected values I_k^(ρ;α,β), k = 0..n.

    ``inner(k)`` is called at the active working precision and may return an
    mpf or an EvalResult.
    """
    _check_n(n)
    rho = parse_value(rho)
    if not rho > 0:
        raise DomainError("rho must be > 0")
    digits = numerics.resolve_digits(digits)

    def compute():
        lam, r = p.lam_r, real(rho)
        half = mpf(1) / 2
        acc = CompensatedSum()
        # rounding in each 5F4 scales with its largest term, weighted by its coefficient
        scale = mpf(0)
        for k in range(n + 1):
            coef = (
                comb(n, k)
                * mp.factorial(k) ** 2
                * pochhammer(k + 2 * lam, n)
                * pochhammer(lam, k)
                * pochhammer(r + half, k)
                / (pochhammer(2 * r, 2 * k) * pochhammer(r, k) * pochhammer(lam + half, k))
            )
            spec = PFqSpec(
                [k - n, k + n + 2 * lam, k + lam, k + 2 * r, k + r + half],
                [2 * k + 2 * r + 1, k + r, k + 2 * lam, k + lam + half],
            )
            f, rep = eval_terminating(spec, check=False)
            ik = inner(k)
            ik = ik.value if isinstance(ik, EvalResult) else numerics.to_real(ik)
            scale += abs(coef * ik) * rep.max_abs_term
            acc.add(coef * f * ik)
        value = pochhammer(2 * lam, n) / mp.factorial(n) ** 2 * acc.value
        return value, CancellationReport(max(scale, acc.max_abs_term), abs(acc.value))

    value, report, work = escalate(compute, digits)
    return _result(value, "connection", p, n, digits, report, work)


def _lambda_minus_k_inner(lam, k: int, r: int):
    """Inner ℓ-sum for the power (1-z)^r of the rational generating function."""
    half = mpf(1) / 2
    total = mpf(0)
    for ell in range(r // 2 + 1):
        total += (
            pochhammer(half, k - ell - 1) ** 2
            * pochhammer(half, ell)
            / (4**ell * mp.factorial(r - 2 * ell) * mp.factorial(ell)
               * pochhammer(lam - k - ell + r + half, 2 * k - r - 1))
        )
    return total


def lambda_minus_k_prefactor(lam, k: int):
    """4^(k-1) √π Γ(λ+1/2)/Γ(λ)."""
    return 4 ** (k - 1) * mp.sqrt(mp.pi) * mp.gamma(lam + mpf(1) / 2) * mp.rgamma(lam)


def _check_lambda_minus_k(lam, k):
    if k < 1:
        raise DomainError("k must be >= 1")
    if not lam - k > Fraction(-1, 2):
        raise DomainError(f"need lambda - k > -1/2, got lambda={lam}, k={k}")


def jn_lambda_minus_k(lam, k: int, n: int, digits: int | None = None) -> EvalResult:
    """J_n^(λ;λ-k) = (2λ)_n/n! · q_k(n) with q_k of degree 2k-2."""
    _check_n(n)
    lam = parse_value(lam)
    _check_lambda_minus_k(lam, k)
    digits = numerics.resolve_digits(digits)
    g = GegenbauerParams(lam, add(lam, Fraction(-k)))

    def compute():
        lr = real(lam)
        acc = CompensatedSum()
        for r in range(2 * k - 1):
            acc.add(numerics.binomial_real(n + 2 * k - 2 - r, n) * _lambda_minus_k_inner(lr, k, r))
        value = gegenbauer_at_one(lr, n) * lambda_minus_k_prefactor(lr, k) * acc.value
        return value, acc.report()

    value, report, work = escalate(compute, digits)
    return _result(value, "closedForm", g, n, digits, report, work)


def jn_lambda_plus_k(lam, k: int, n: int, digits: int | None = None) -> EvalResult:
    """J_n^(λ;λ+k) from the finite sum with at most k+1 terms."""
    _check_n(n)
    if k < 0:
        raise DomainError("k must be >= 0")
    lam = parse_value(lam)
    digits = numerics.resolve_digits(digits)
    g = GegenbauerParams(lam, add(lam, Fraction(k)))

    def compute():
        lr = real(lam)
        if k == 0:
            v = gegenbauer_at_one(lr, n) * mp.sqrt(mp.pi) * mp.gamma(lr + mpf(1) / 2) \
                * mp.rgamma(lr) / (n + lr)
            return v, CancellationReport.exact(v)
        acc = CompensatedSum()
        for ell in range(min(k, n // 2) + 1):
            ratio = mp.gamma(n - ell + lr) * mp.rgamma(n + k - ell + 1 + lr)
            acc.add(
                comb(k, ell) ** 2 * ratio**2 * (n - 2 * ell + k + lr)
                * mp.gamma(n + 2 * k - 2 * ell + 2 * lr) * mp.rgamma(n - 2 * ell + 1)
            )
        v = 2 * mp.pi / (4 ** (lr + k) * mp.gamma(lr) ** 2) * acc.value
        return v, acc.report()

    value, report, work = escalate(compute, digits)
    return _result(value, "closedForm", g, n, digits, report, work)


def evaluate_j(g: GegenbauerParams, n: int, digits: int | None = None) -> EvalResult:
    """Pick a route for J_n: the 4F3 unless its cancellation exceeds the budget,
    in which case the all-positive connection sum is used."""
    digits = numerics.resolve_digits(digits)
    if g.mu != 0:
        try:
            with mp.workdps(digits):
                lam, mu = g.lam_r, g.mu_r
                half = mpf(1) / 2
                eval_terminating(PFqSpec([-n, n + 2 * lam, lam, mu + half], [2 * lam, lam + half, mu + 1]))
        except PrecisionExhausted:
            return jn_connection(g, n, digits)
    return jn_exact(g, n, digits)


def evaluate_i(p: JacobiParams, n: int, digits: int | None = None) -> EvalResult:
    """Pick a route for I_n (Gegenbauer weights go through :func:`evaluate_j`)."""
    if p.symmetric:
        return evaluate_j(p.as_gegenbauer(), n, digits)
    return in_exact(p, n, digits)
