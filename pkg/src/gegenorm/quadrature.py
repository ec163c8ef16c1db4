"""Gauss–Jacobi quadrature oracle.

The integrand (C_n^λ)² is a polynomial of degree 2n, so an (n+1)-node
Gauss–Jacobi rule for the weight (1-x)^α (1+x)^β integrates it exactly.
This module deliberately shares no arithmetic with the hypergeometric
routes: nodes, weights and polynomial values are computed in gmpy2/MPFR
and only the final sums are handed back as mpf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import gmpy2
import mpmath
from gmpy2 import mpfr
from scipy.special import roots_jacobi

from . import numerics
from .errors import ConvergenceError
from .params import JacobiParams, parse_value

_GUARD_BITS = 64


def _bits(digits: int) -> int:
    return int(math.ceil(digits * math.log2(10))) + _GUARD_BITS


def _mpfr(x):
    """Parameter value (Fraction/Decimal/number) as an mpfr at the active MPFR precision."""
    x = parse_value(x)
    if isinstance(x, Fraction):
        return mpfr(gmpy2.mpq(x.numerator, x.denominator))
    return mpfr(str(x))


def _to_mpf(x) -> mpmath.mpf:
    man, exp = x.as_mantissa_exp()
    return mpmath.mpf((int(man), int(exp)))


def _gegenbauer_values(lam, n, xs):
    """C_n^λ(x) for every x in ``xs`` (mpfr arithmetic)."""
    out = []
    two_lam = 2 * lam
    for x in xs:
        c_prev, c = mpfr(1), two_lam * x
        if n == 0:
            out.append(c_prev)
            continue
        for k in range(1, n):
            c_prev, c = c, (2 * (k + lam) * x * c - (k + two_lam - 1) * c_prev) / (k + 1)
        out.append(c)
    return out


def _recurrence_coefficients(N, a, b):
    """(A_n, B_n, C_n) with P_n = (A_n x + B_n) P_{n-1} - C_n P_{n-2}, n = 2..N."""
    coeffs = []
    for n in range(2, N + 1):
        s = 2 * n + a + b
        c1 = 2 * n * (n + a + b) * (s - 2)
        coeffs.append(
            (
                (s - 1) * s * (s - 2) / c1,
                (s - 1) * (a * a - b * b) / c1,
                2 * (n + a - 1) * (n + b - 1) * s / c1,
            )
        )
    return coeffs


def _jacobi_p_and_derivative(N, a, b, x, coeffs):
    """P_N^(a,b)(x) and its derivative."""
    p_prev = mpfr(1)
    p = ((a + b + 2) * x + (a - b)) / 2
    if N == 1:
        return p, (a + b + 2) / 2
    for A, B, C in coeffs:
        p_prev, p = p, (A * x + B) * p - C * p_prev
    s = 2 * N + a + b
    dp = (N * ((a - b) - s * x) * p + 2 * (N + a) * (N + b) * p_prev) / (s * (1 - x * x))
    return p, dp


@lru_cache(maxsize=4096)
def _rule_mpfr(alpha, beta, node_count, bits):
    with gmpy2.context(gmpy2.get_context(), precision=bits):
        a = _mpfr(alpha)
        b = _mpfr(beta)
        N = node_count
        coeffs = _recurrence_coefficients(N, a, b)
        if N == 1:
            guesses = [float((b - a) / (a + b + 2))]
        else:
            guesses = sorted(roots_jacobi(N, float(a), float(b))[0])
        # Newton converges quadratically: once |dx| < 2^(-bits/2) the next
        # correction is already below the working precision.
        half_tol = mpfr(2) ** (4 - bits // 2)
        nodes, derivs = [], []
        for g in guesses:
            x = mpfr(g)
            for _ in range(60):
                p, dp = _jacobi_p_and_derivative(N, a, b, x, coeffs)
                dx = p / dp
                x -= dx
                if abs(dx) <= half_tol:
                    break
            else:
                raise ConvergenceError(f"Newton failed for node near {g} (N={N})")
            p, dp = _jacobi_p_and_derivative(N, a, b, x, coeffs)
            x -= p / dp
            if not -1 < x < 1:
                raise ConvergenceError(f"node {x} escaped (-1, 1)")
            nodes.append(x)
            derivs.append(dp)
        for left, right in zip(nodes, nodes[1:]):
            if not left < right:
                raise ConvergenceError("Newton refinement merged two nodes")
        const = (
            mpfr(2) ** (a + b + 1)
            * gmpy2.gamma(N + a + 1)
            * gmpy2.gamma(N + b + 1)
            / (gmpy2.gamma(N + a + b + 1) * gmpy2.factorial(N))
        )
        weights = [const / ((1 - x * x) * d * d) for x, d in zip(nodes, derivs)]
        return tuple(nodes), tuple(weights)


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss–Jacobi nodes and weights, exact for polynomials of degree <= ``degree``."""

    nodes: tuple
    weights: tuple
    alpha: object
    beta: object
    degree: int

    @property
    def mass(self):
        return mpmath.fsum(self.weights)


def build_rule(alpha, beta, node_count: int, digits: int | None = None) -> QuadratureRule:
    """Gauss–Jacobi rule for (1-x)^α (1+x)^β with Newton-polished nodes."""
    if node_count < 1:
        raise ValueError("node_count must be >= 1")
    alpha, beta = parse_value(alpha), parse_value(beta)
    if not (alpha > -1 and beta > -1):
        raise ValueError("alpha and beta must exceed -1")
    digits = numerics.resolve_digits(digits)
    nodes, weights = _rule_mpfr(alpha, beta, node_count, _bits(digits))
    with mpmath.workdps(digits):
        return QuadratureRule(
            nodes=tuple(+_to_mpf(x) for x in nodes),
            weights=tuple(+_to_mpf(w) for w in weights),
            alpha=alpha,
            beta=beta,
            degree=2 * node_count - 1,
        )


def gegenbauer_eval(lam, n: int, x) -> mpmath.mpf:
    """C_n^λ(x) by the three-term recurrence at the active mpmath precision."""
    if n < 0:
        raise ValueError("n must be non-negative")
    lam = numerics.to_real(lam)
    x = numerics.to_real(x)
    c_prev, c = mpmath.mpf(1), 2 * lam * x
    if n == 0:
        return c_prev
    for k in range(1, n):
        c_prev, c = c, (2 * (k + lam) * x * c - (k + 2 * lam - 1) * c_prev) / (k + 1)
    return c


def _oracle_sum(lam, n, rule_nodes, rule_weights):
    values = _gegenbauer_values(lam, n, rule_nodes)
    return gmpy2.fsum(w * v * v for w, v in zip(rule_weights, values))


def in_oracle(p: JacobiParams, n: int, digits: int | None = None, redundancy: bool = False):
    """∫ (C_n^λ)² (1-x)^α (1+x)^β dx by an (n+1)-node Gauss–Jacobi rule.

    With ``redundancy=True`` the integral is recomputed with n+5 nodes and a
    disagreement beyond the digit budget raises ConvergenceError.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    digits = numerics.resolve_digits(digits)
    bits = _bits(digits)
    with gmpy2.context(gmpy2.get_context(), precision=bits):
        lam = _mpfr(p.lam)
        nodes, weights = _rule_mpfr(p.alpha, p.beta, n + 1, bits)
        value = _oracle_sum(lam, n, nodes, weights)
        if redundancy:
            nodes5, weights5 = _rule_mpfr(p.alpha, p.beta, n + 5, bits)
            check = _oracle_sum(lam, n, nodes5, weights5)
            if abs(check - value) > abs(value) * mpfr(10) ** (5 - digits):
                raise ConvergenceError(
                    f"{n + 1}- and {n + 5}-node rules disagree: {value} vs {check}"
                )
    with mpmath.workdps(digits):
        return +_to_mpf(value)


def in_oracle_sequence(p: JacobiParams, n_max: int, digits: int | None = None):
    """[in_oracle(p, n) for n in 0..n_max] sharing one (n_max+1)-node rule."""
    digits = numerics.resolve_digits(digits)
    bits = _bits(digits)
    with gmpy2.context(gmpy2.get_context(), precision=bits):
        lam = _mpfr(p.lam)
        nodes, weights = _rule_mpfr(p.alpha, p.beta, n_max + 1, bits)
        two_lam = 2 * lam
        prev = [mpfr(1)] * len(nodes)
        cur = [two_lam * x for x in nodes]
        sums = [gmpy2.fsum(weights)]
        if n_max >= 1:
            sums.append(gmpy2.fsum(w * c * c for w, c in zip(weights, cur)))
        for k in range(1, n_max):
            prev, cur = cur, [
                (2 * (k + lam) * x * c - (k + two_lam - 1) * q) / (k + 1)
                for x, c, q in zip(nodes, cur, prev)
            ]
            sums.append(gmpy2.fsum(w * c * c for w, c in zip(weights, cur)))
    with mpmath.workdps(digits):
        return [+_to_mpf(s) for s in sums]
