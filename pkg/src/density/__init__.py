"""Equivariant densities, decay rates and temperedness diagnostics."""

from .decay import BoundednessReport, DecayReport, backward_boundedness, decay_rate, lyapunov_top
from .solver import DEFAULT_TOL, DensityResult, densities_along, equivariance_residual, equivariant_density
from .temperedness import TemperednessReport, temperedness_diagnostic

__all__ = [
    "BoundednessReport",
    "DEFAULT_TOL",
    "DecayReport",
    "DensityResult",
    "TemperednessReport",
    "backward_boundedness",
    "decay_rate",
    "densities_along",
    "equivariance_residual",
    "equivariant_density",
    "lyapunov_top",
    "temperedness_diagnostic",
]
