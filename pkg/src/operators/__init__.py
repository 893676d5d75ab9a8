"""Galerkin transfer operators and their compositions along orbits."""

from ..dynamics import WindowError
from .transfer import (
    ModeMismatchError,
    TransferCache,
    TransferMatrix,
    apply,
    apply_adjoint,
    assemble,
    compose_forward,
    default_cache,
    fiber_matrix,
    iterate_forward,
    iterate_pullback,
    operator_norm_estimate,
    push_forward,
)

__all__ = [
    "ModeMismatchError",
    "TransferCache",
    "TransferMatrix",
    "WindowError",
    "apply",
    "apply_adjoint",
    "assemble",
    "compose_forward",
    "default_cache",
    "fiber_matrix",
    "iterate_forward",
    "iterate_pullback",
    "operator_norm_estimate",
    "push_forward",
]
