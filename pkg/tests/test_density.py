"""Tests for equivariant densities by pullback iteration."""

import numpy as np
import pytest

from src.dynamics import WindowError, constant_orbit, sample_orbit
from src.density import densities_along, equivariance_residual, equivariant_density
from src.spectral import FourierFunction, sobolev_norm

from .ulam_oracle import ulam_density

BINS = 1 << 14


def test_doubling_density_is_lebesgue(doubling_orbit):
    result = equivariant_density(doubling_orbit, 0.0, 0, tol=1e-12)
    assert result.converged
    assert result.cauchy_defect <= 1e-12
    assert np.allclose(result.h.coeffs, FourierFunction.constant(1.0, 32).coeffs, atol=1e-14)
    assert result.positive


def test_pullback_converges_geometrically(additive_orbit):
    result = equivariant_density(additive_orbit, 0.0, 0, tol=1e-12)
    assert result.converged
    assert result.h.mean == 1.0
    assert result.positive
    defects = np.array(result.defects)
    head = defects[: len(defects) // 2]
    slope = np.polyfit(np.arange(head.size), np.log(head), 1)[0]
    assert slope < -0.3


def test_uniqueness_from_two_initial_densities(additive_orbit):
    plain = equivariant_density(additive_orbit, 0.02, 0, tol=1e-12)
    bumped = equivariant_density(
        additive_orbit, 0.02, 0, tol=1e-12, initial=FourierFunction.constant(1.0, 32) + FourierFunction.cosine(1, 32, 0.5)
    )
    assert sobolev_norm(plain.h - bumped.h, 1) <= 1e-8


def test_density_matches_ulam_oracle(additive_fixed):
    orbit = constant_orbit(additive_fixed, 80)
    result = equivariant_density(orbit, 0.0, 0, tol=1e-13, modes=48)
    oracle = ulam_density(lambda x: additive_fixed.lift(0.0, x), BINS)
    centers = (np.arange(BINS) + 0.5) / BINS
    assert float(np.mean(np.abs(result.h.evaluate(centers) - oracle))) <= 2e-3


def test_random_orbit_equivariance(mixture_registry):
    orbit = sample_orbit("iid", 11, 80, {"alphabet": ["A", "B"]}, mixture_registry)
    h0 = equivariant_density(orbit, 0.02, 0, tol=1e-12)
    h1 = equivariant_density(orbit, 0.02, 1, tol=1e-12)
    assert h0.converged and h1.converged
    assert equivariance_residual(orbit, 0.02, 0, h0, h1) <= 1e-8
    assert h0.positive and h1.positive


def test_densities_along_is_equivariant(mixture_registry):
    orbit = sample_orbit("iid", 5, 60, {"alphabet": ["A", "B"]}, mixture_registry)
    table = densities_along(orbit, 0.0, -2, 2, tol=1e-12)
    assert sorted(table) == [-2, -1, 0, 1, 2]
    for n in range(-2, 2):
        assert equivariance_residual(orbit, 0.0, n, table[n], table[n + 1]) <= 1e-12
        assert table[n].h.mean == pytest.approx(1.0, abs=1e-9)


def test_residual_requires_consecutive_fibers(additive_orbit):
    h0 = equivariant_density(additive_orbit, 0.0, 0)
    with pytest.raises(ValueError, match="consecutive"):
        equivariance_residual(additive_orbit, 0.0, 0, h0, h0)


def test_not_converged_is_reported(additive_orbit):
    result = equivariant_density(additive_orbit, 0.0, 0, tol=1e-14, max_depth=2)
    assert not result.converged
    assert result.pullback_depth == 2
    assert result.cauchy_defect > 1e-14


def test_window_and_mass_errors(additive_orbit):
    with pytest.raises(WindowError):
        equivariant_density(additive_orbit, 0.0, additive_orbit.lo)
    with pytest.raises(ValueError, match="mass"):
        equivariant_density(additive_orbit, 0.0, 0, initial=FourierFunction.cosine(1, 32))
    with pytest.raises(ValueError):
        densities_along(additive_orbit, 0.0, 2, 1)
