"""Derivative operator, response series and rate validation."""

from .derivative_operator import appendix_derivative_operator, derivative_operator
from .series import ResponseResult, koopman_observable_response, response_series
from .validation import (
    FitRefusedError,
    RateFit,
    ResponseValidation,
    check_eps_list,
    dyadic_eps_grid,
    operator_taylor_check,
    perturbation_norm,
    perturbation_norms,
    rate_fit,
    response_validation,
    stability_rate,
)

__all__ = [
    "FitRefusedError",
    "RateFit",
    "ResponseResult",
    "ResponseValidation",
    "appendix_derivative_operator",
    "check_eps_list",
    "derivative_operator",
    "dyadic_eps_grid",
    "koopman_observable_response",
    "operator_taylor_check",
    "perturbation_norm",
    "perturbation_norms",
    "rate_fit",
    "response_series",
    "response_validation",
    "stability_rate",
]
