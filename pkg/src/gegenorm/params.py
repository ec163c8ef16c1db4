"""Validated parameter records and classification of parameter regimes.

Parameters are kept in their input form so they can be re-converted at
any working precision:

* ``int`` / ``Fraction`` inputs are *exact* and carry exact-rational tags;
* everything else (floats, decimal strings, mpf) is *floating* and stored as
  a :class:`decimal.Decimal` holding the exact input value.

Only exact parameters can place a point on a non-generic hyperplane; the
classification of floating parameters is always ``Generic``.
"""

from __future__ import annotations

import decimal
import warnings
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from numbers import Integral

import mpmath

from .errors import DomainError, NonGenericProximityWarning

_DEC = decimal.Context(prec=200)

PROXIMITY = 1e-6

GENERIC = "Generic"
ALPHA_EQ_LAMBDA_MINUS_1 = "AlphaEqLambdaMinus1"
MU_EQ_LAMBDA_MINUS_HALF = "MuEqLambdaMinusHalf"
LAMBDA_MINUS_MU_POS_INT = "LambdaMinusMuIsPosInt"
MU_MINUS_LAMBDA_POS_INT = "MuMinusLambdaIsPosInt"
LAMBDA_POS_INT = "LambdaIsPosInt"
OTHER_NON_GENERIC = "OtherNonGeneric"

HALF = Fraction(1, 2)


def parse_value(x):
    """Normalise a parameter: Fraction when exact, Decimal otherwise.

    Strings of the form ``"p/q"`` or ``"p"`` (integer literal) are exact;
    other strings are decimal floating inputs.
    """
    if isinstance(x, bool):
        raise TypeError("bool is not a parameter value")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Integral):
        return Fraction(int(x))
    if isinstance(x, Decimal):
        return x
    if isinstance(x, float):
        return Decimal(x)
    if isinstance(x, mpmath.mpf):
        man, exp = mpmath.mpf(x).man_exp
        man = int(man)
        return _DEC.multiply(Decimal(man), _DEC.power(Decimal(2), exp)) if exp < 0 else Decimal(man * 2**exp)
    if isinstance(x, str):
        s = x.strip()
        if "/" in s:
            return Fraction(s)
        try:
            return Fraction(int(s))
        except ValueError:
            return Decimal(s)
    raise TypeError(f"unsupported parameter type {type(x).__name__}")


def add(x, y):
    """Exact sum of two normalised values (Decimal if either is floating)."""
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return x + y
    return _DEC.add(_to_decimal(x), _to_decimal(y))


def _to_decimal(x):
    if isinstance(x, Decimal):
        return x
    return _DEC.divide(Decimal(x.numerator), Decimal(x.denominator))


def real(x):
    """mpf value of a normalised parameter at the active precision."""
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(str(x))


def is_tagged(x) -> bool:
    return isinstance(x, Fraction)


def format_value(x) -> str:
    return str(x)


@dataclass(frozen=True)
class ParamClass:
    """Regime of a parameter point; ``witness`` is the integer k when relevant."""

    tag: str = GENERIC
    witness: int | None = None

    @property
    def generic(self) -> bool:
        return self.tag == GENERIC

    def __str__(self):
        return self.tag if self.witness is None else f"{self.tag}({self.witness})"


@dataclass(frozen=True, init=False)
class GegenbauerParams:
    """λ > 0, μ > -1/2 for the weight (1-x²)^(μ-1/2)."""

    lam: object
    mu: object

    def __init__(self, lam, mu):
        lam = parse_value(lam)
        mu = parse_value(mu)
        if not lam > 0:
            raise DomainError(f"lambda must be > 0, got {lam}")
        if not mu > Fraction(-1, 2):
            raise DomainError(f"mu must be > -1/2, got {mu}")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "mu", mu)

    @property
    def lam_r(self):
        return real(self.lam)

    @property
    def mu_r(self):
        return real(self.mu)

    def as_jacobi(self) -> "JacobiParams":
        a = add(self.mu, -HALF)
        return JacobiParams(self.lam, a, a)

    def classify(self) -> ParamClass:
        return classify_gegenbauer(self.lam, self.mu)

    def to_dict(self) -> dict:
        return {"lambda": format_value(self.lam), "mu": format_value(self.mu)}


@dataclass(frozen=True, init=False)
class JacobiParams:
    """λ > 0, α > -1, β > -1 for the weight (1-x)^α (1+x)^β."""

    lam: object
    alpha: object
    beta: object

    def __init__(self, lam, alpha, beta):
        lam = parse_value(lam)
        alpha = parse_value(alpha)
        beta = parse_value(beta)
        if not lam > 0:
            raise DomainError(f"lambda must be > 0, got {lam}")
        if not alpha > -1 or not beta > -1:
            raise DomainError(f"alpha, beta must be > -1, got {alpha}, {beta}")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    @property
    def lam_r(self):
        return real(self.lam)

    @property
    def alpha_r(self):
        return real(self.alpha)

    @property
    def beta_r(self):
        return real(self.beta)

    def swapped(self) -> "JacobiParams":
        return JacobiParams(self.lam, self.beta, self.alpha)

    @property
    def symmetric(self) -> bool:
        return self.alpha == self.beta

    def as_gegenbauer(self) -> GegenbauerParams:
        if not self.symmetric:
            raise DomainError("only alpha == beta maps to a Gegenbauer weight")
        return GegenbauerParams(self.lam, add(self.alpha, HALF))

    def beta_minus_alpha(self):
        """β - α as an int when both are tagged and it is an integer."""
        if is_tagged(self.alpha) and is_tagged(self.beta):
            d = self.beta - self.alpha
            if d.denominator == 1:
                return int(d)
        return None

    def classify(self) -> ParamClass:
        return classify_jacobi(self.lam, self.alpha, self.beta)

    def to_dict(self) -> dict:
        return {
            "lambda": format_value(self.lam),
            "alpha": format_value(self.alpha),
            "beta": format_value(self.beta),
        }


def _int_if_integer(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return None


def _relations_gegenbauer(lam, mu):
    return [lam, mu + 1 - lam, mu + HALF - 2 * lam, mu + HALF - lam]


def _relations_jacobi(lam, a, b):
    return [a - lam, b - lam, a - b, a - 2 * lam, b - 2 * lam, a + b - 2 * lam, lam]


def classify_gegenbauer(lam, mu) -> ParamClass:
    lam = parse_value(lam)
    mu = parse_value(mu)
    both = is_tagged(lam) and is_tagged(mu)
    if both:
        if mu == lam - HALF:
            return ParamClass(MU_EQ_LAMBDA_MINUS_HALF)
        k = _int_if_integer(lam - mu)
        if k is not None and k >= 1:
            return ParamClass(LAMBDA_MINUS_MU_POS_INT, k)
        k = _int_if_integer(mu - lam)
        if k is not None and k >= 0:
            return ParamClass(MU_MINUS_LAMBDA_POS_INT, k)
    if is_tagged(lam) and lam.denominator == 1:
        if not is_tagged(mu) or (2 * mu).denominator != 1:
            return ParamClass(LAMBDA_POS_INT, int(lam))
        return ParamClass(OTHER_NON_GENERIC)
    if both and any(_int_if_integer(r) is not None for r in _relations_gegenbauer(lam, mu)):
        return ParamClass(OTHER_NON_GENERIC)
    return ParamClass(GENERIC)


def classify_jacobi(lam, a, b) -> ParamClass:
    lam, a, b = parse_value(lam), parse_value(a), parse_value(b)
    if not all(map(is_tagged, (lam, a, b))):
        # relations among the tagged subset can still be decided
        if is_tagged(lam) and lam.denominator == 1:
            return ParamClass(OTHER_NON_GENERIC)
        if is_tagged(a) and is_tagged(b) and (a - b).denominator == 1:
            if a == b:
                return classify_gegenbauer(lam, a + HALF)
            return ParamClass(OTHER_NON_GENERIC)
        return ParamClass(GENERIC)
    if a == b:
        return classify_gegenbauer(lam, a + HALF)
    if min(a, b) == lam - 1:
        return ParamClass(ALPHA_EQ_LAMBDA_MINUS_1)
    if any(_int_if_integer(r) is not None for r in _relations_jacobi(lam, a, b)):
        return ParamClass(OTHER_NON_GENERIC)
    return ParamClass(GENERIC)


def _near_integer(values) -> bool:
    for v in values:
        f = float(v)
        if abs(f - round(f)) < PROXIMITY:
            return True
    return False


_PROBE_SHIFTS = (0.1371, 0.2913, 0.4337)  # distinct, so no small integer relation cancels them


def _proximity_relations(params, probe):
    """Relation values, with floating parameters moved when ``probe`` is set."""
    names = ("lam", "mu") if isinstance(params, GegenbauerParams) else ("lam", "alpha", "beta")
    vals = []
    for name, shift in zip(names, _PROBE_SHIFTS):
        v = getattr(params, name)
        vals.append(float(v) + (shift if probe and not is_tagged(v) else 0.0))
    if isinstance(params, GegenbauerParams):
        lam, mu = vals
        return _relations_gegenbauer(lam, mu) + [mu - lam + 0.5]
    lam, a, b = vals
    return _relations_jacobi(lam, a, b) + [min(a, b) - lam + 1]


def warn_if_near_nongeneric(params) -> None:
    """Warn when floating parameters lie within 1e-6 of a non-generic hyperplane.

    Relations fixed by exact parameters alone are skipped: those were
    already decided by the classifier.
    """
    rel = _proximity_relations(params, False)
    moved = _proximity_relations(params, True)
    floating = [r for r, m in zip(rel, moved) if r != m]
    if _near_integer(floating):
        warnings.warn(
            f"floating parameters {params.to_dict()} are within {PROXIMITY:g} of a "
            "non-generic configuration; pass exact rationals to select a special case",
            NonGenericProximityWarning,
            stacklevel=3,
        )
