"""Tests for the finite-window temperedness diagnostic."""

import numpy as np
import pytest

from src.density import temperedness_diagnostic

N = 64
INDICES = np.arange(-N, N + 1)


def test_constant_series_is_tempered():
    report = temperedness_diagnostic([1.0] * (2 * N + 1), 0.1)
    assert report.K_a == 1.0
    assert report.sublinear_ok
    assert all(e == 0.0 for e in report.shell_exponents)
    assert len(report.shell_exponents) == 7


def test_polynomial_growth_is_tempered():
    report = temperedness_diagnostic(list((1.0 + np.abs(INDICES)) ** 2), 0.1)
    assert report.sublinear_ok
    assert report.K_a == pytest.approx(max((1.0 + n) ** 2 * np.exp(-0.1 * n) for n in range(N + 1)))


def test_exponential_growth_is_not_tempered():
    report = temperedness_diagnostic(list(np.exp(0.5 * np.abs(INDICES))), 0.1)
    assert not report.sublinear_ok
    assert report.shell_exponents[-1] == pytest.approx(0.5)


def test_mapping_input():
    series = {n: 2.0 for n in range(-4, 5)}
    report = temperedness_diagnostic(series, 1.0)
    assert report.K_a == 2.0


def test_invalid_inputs():
    with pytest.raises(ValueError, match="positive"):
        temperedness_diagnostic([1.0, 0.0, 1.0, 1.0, 1.0], 0.1)
    with pytest.raises(ValueError):
        temperedness_diagnostic([1.0] * 5, 0.0)
    with pytest.raises(ValueError, match="shells"):
        temperedness_diagnostic([1.0, 1.0, 1.0], 0.1)
