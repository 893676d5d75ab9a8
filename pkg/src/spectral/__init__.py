"""Fourier representation of circle functions and Sobolev norms."""

from .observables import bump_observable
from .fourier import (
    AliasingError,
    FourierFunction,
    antiderivative,
    default_quadrature,
    derivative,
    multiply,
    project,
    random_fourier,
    sobolev_norm,
    uniform_grid,
    wavenumbers,
)

__all__ = [
    "AliasingError",
    "bump_observable",
    "FourierFunction",
    "antiderivative",
    "default_quadrature",
    "derivative",
    "multiply",
    "project",
    "random_fourier",
    "sobolev_norm",
    "uniform_grid",
    "wavenumbers",
]
