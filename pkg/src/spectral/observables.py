"""Smooth compactly supported observables projected to Fourier modes."""

from typing import Tuple

import numpy as np

from .fourier import FourierFunction, project, uniform_grid

# Fine grid used to sample the exact bump before projection
_SAMPLE_POINTS = 1 << 15


def _bump(t: np.ndarray) -> np.ndarray:
    """exp(-1/(1-t²)) on (-1, 1), zero outside."""
    out = np.zeros_like(t)
    inside = np.abs(t) < 1.0
    out[inside] = np.exp(-1.0 / (1.0 - t[inside] ** 2))
    return out


def bump_observable(
    interval: Tuple[float, float],
    modes: int,
    antiperiodic: bool = False,
) -> FourierFunction:
    """
    Mean-zero, L²-normalized C^∞ bump supported on an arc, projected to M modes.

    The profile is the odd function t·exp(-1/(1-t²)) rescaled to the arc, so its
    integral vanishes without spreading mass outside the arc. With
    ``antiperiodic`` the profile is replaced by g(x) - g(x + 1/2), which only
    carries odd wavenumbers.

    Args:
        interval: Arc (a, b) with 0 < a < b < 1
        modes: Truncation order M
        antiperiodic: Build the antiperiodic variant

    Returns:
        FourierFunction with mean 0 and ∫ψ² dm = 1 (exact in coefficients)
    """
    a, b = interval
    if not 0.0 < a < b < 1.0:
        raise ValueError(f"arc {interval} must satisfy 0 < a < b < 1")

    x = uniform_grid(_SAMPLE_POINTS)
    center = 0.5 * (a + b)
    half_width = 0.5 * (b - a)

    def profile(points: np.ndarray) -> np.ndarray:
        offset = (points - center + 0.5) % 1.0 - 0.5
        t = offset / half_width
        return t * _bump(t)

    samples = profile(x)
    if antiperiodic:
        samples = samples - profile(x + 0.5)

    psi = project(samples, modes).with_mean(0.0)
    if antiperiodic:
        coeffs = psi.coeffs.copy()
        coeffs[(np.arange(-modes, modes + 1) % 2) == 0] = 0.0
        psi = FourierFunction(coeffs)
    norm = np.sqrt(float(np.sum(np.abs(psi.coeffs) ** 2)))
    return psi / norm
