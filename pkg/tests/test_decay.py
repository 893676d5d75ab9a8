"""Tests for decay rates, the top Lyapunov exponent and backward boundedness."""

import numpy as np
import pytest

from src.dynamics import constant_orbit
from src.density import backward_boundedness, decay_rate, lyapunov_top
from src.spectral import FourierFunction


def test_mean_zero_functions_decay(additive_fixed):
    orbit = constant_orbit(additive_fixed, 30)
    report = decay_rate(orbit, 0.0, 0, 1, 12, tests=4, modes=32)
    assert report.decaying
    assert not report.annihilated
    assert report.K_hat >= 1.0
    assert len(report.norms) == 4 and len(report.norms[0]) == 13


def test_doubling_annihilates_odd_modes(doubling_orbit):
    report = decay_rate(doubling_orbit, 0.0, 0, 1, 8, tests=[FourierFunction.cosine(1, 16)], modes=16)
    assert report.annihilated
    assert report.rates == (float("-inf"),)
    assert report.lambda_hat == float("inf")


def test_decay_tests_must_have_mean_zero(doubling_orbit):
    with pytest.raises(ValueError, match="mean zero"):
        decay_rate(doubling_orbit, 0.0, 0, 1, 8, tests=[FourierFunction.constant(1.0, 8)], modes=8)


def test_lyapunov_top_of_transfer_cocycle_vanishes(doubling_orbit):
    assert lyapunov_top(doubling_orbit, 0.0, 0, 12, modes=16) == pytest.approx(0.0, abs=1e-6)


def test_backward_boundedness(additive_fixed):
    orbit = constant_orbit(additive_fixed, 30)
    report = backward_boundedness(orbit, 0, 1, 24, modes=32)
    assert report.bounded
    assert report.values[0] == 1.0
    assert report.d_hat == max(report.values)
    assert np.isfinite(report.d_hat)
