"""Weighted L² norms of Gegenbauer polynomials.

I_n^(λ;α,β) = ∫ (C_n^λ(x))² (1-x)^α (1+x)^β dx and its Gegenbauer-weight
case J_n^(λ;μ) = I_n^(λ;μ-1/2,μ-1/2), evaluated by hypergeometric closed
forms, connection sums, a recurrence, generating functions, Gauss–Jacobi
quadrature and large-n asymptotic expansions.
"""

from .asymptotics import (
    AsymptoticExpansion,
    AsymptoticTerm,
    LeadingTerm,
    crossover,
    gegen_coefficient_a,
    gegen_coefficient_b,
    gegen_leading_term,
    in_asymptotic,
    jacobi_coefficient_a,
    jacobi_coefficient_b,
    jacobi_coefficient_d,
    jacobi_leading_term,
    jn_asymptotic,
    jn_lambda_minus_k_leading,
    jn_lambda_plus_k_leading,
    jn_nat_lambda_asymptotic,
    nat_lambda_coefficients,
)
from .errors import (
    ConvergenceError,
    DomainError,
    GegenNormError,
    NoConvergence,
    NonGenericProximityWarning,
    NotReached,
    PoleError,
    PrecisionExhausted,
    TruncationWarning,
)
from .exact import (
    b_coefficient,
    evaluate_i,
    evaluate_j,
    in_exact,
    in_via_alpha_beta_connection,
    in_via_lambda_rho_connection,
    jn_connection,
    jn_exact,
    jn_lambda_minus_k,
    jn_lambda_plus_k,
    jn_recurrence,
)
from .genfun import TaylorSeries, gen_fn_coefficients_i, gen_fn_coefficients_j, gen_fn_rational_form
from .hypergeom import PFqSpec, eval_convergent, eval_terminating, pfaff_saalschutz
from .numerics import CancellationReport, Real
from .params import GegenbauerParams, JacobiParams, ParamClass
from .quadrature import QuadratureRule, build_rule, gegenbauer_eval, in_oracle
from .results import EvalResult

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
