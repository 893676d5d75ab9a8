"""Tests for the Fourier representation and Sobolev norms."""

import numpy as np
import pytest

from src.spectral import (
    AliasingError,
    FourierFunction,
    antiderivative,
    bump_observable,
    derivative,
    multiply,
    project,
    random_fourier,
    sobolev_norm,
    uniform_grid,
)

FINE = 1 << 14


def test_cosine_and_sine_coefficients():
    c = FourierFunction.cosine(3, 8)
    s = FourierFunction.sine(2, 8, amplitude=4.0)
    assert c.coeff(3) == pytest.approx(0.5)
    assert c.coeff(-3) == pytest.approx(0.5)
    assert s.coeff(2) == pytest.approx(-2.0j)
    assert s.coeff(-2) == pytest.approx(2.0j)
    assert c.coeff(9) == 0.0


def test_non_hermitian_coefficients_rejected():
    with pytest.raises(ValueError, match="Hermitian"):
        FourierFunction(np.array([1j, 0.0, 0.0]))


def test_even_length_rejected():
    with pytest.raises(ValueError):
        FourierFunction(np.zeros(4))


def test_instances_are_immutable():
    f = FourierFunction.constant(1.0, 4)
    with pytest.raises(AttributeError):
        f.extra = 1
    with pytest.raises(ValueError):
        f.coeffs[0] = 2.0


def test_project_is_exact_for_trigonometric_polynomials():
    x = uniform_grid(64)
    samples = 1.5 + np.cos(2 * np.pi * 3 * x) - 2.0 * np.sin(2 * np.pi * 5 * x)
    f = project(samples, 8)
    assert f.mean == pytest.approx(1.5, abs=1e-14)
    assert f.coeff(3) == pytest.approx(0.5, abs=1e-14)
    assert f.coeff(5) == pytest.approx(1.0j, abs=1e-14)
    assert np.allclose(f.grid_values(64), samples, atol=1e-13)


def test_project_needs_enough_samples():
    with pytest.raises(AliasingError):
        project(np.zeros(10), 8)


def test_grid_values_match_direct_evaluation(rng):
    f = random_fourier(rng, 16)
    x = uniform_grid(200)
    assert np.allclose(f.grid_values(200), f.evaluate(x), atol=1e-12)


def test_derivative_of_cosine():
    d = derivative(FourierFunction.cosine(1, 8))
    expected = FourierFunction.sine(1, 8, amplitude=-2 * np.pi)
    assert np.allclose(d.coeffs, expected.coeffs)


def test_antiderivative_inverts_derivative(rng):
    f = random_fourier(rng, 16, mean_zero=True)
    F = antiderivative(f)
    assert np.allclose(derivative(F).coeffs, f.coeffs, atol=1e-14)
    assert F.evaluate(np.array([0.0]))[0] == pytest.approx(0.0, abs=1e-14)


def test_antiderivative_requires_mean_zero():
    with pytest.raises(ValueError, match="mean-zero"):
        antiderivative(FourierFunction.constant(1.0, 4))


def test_multiply_cosines():
    c = FourierFunction.cosine(1, 8)
    product = multiply(c, c)
    assert product.mean == pytest.approx(0.5, abs=1e-14)
    assert product.coeff(2) == pytest.approx(0.25, abs=1e-14)
    assert product.coeff(1) == pytest.approx(0.0, abs=1e-14)


def test_inner_product_is_parseval():
    c = FourierFunction.cosine(2, 8)
    assert c.inner(c) == pytest.approx(0.5)
    assert c.inner(FourierFunction.sine(2, 8)) == pytest.approx(0.0)


def test_sobolev_norms_of_cosine():
    c = FourierFunction.cosine(1, 8)
    assert sobolev_norm(FourierFunction.constant(1.0, 8), 3) == pytest.approx(1.0)
    assert sobolev_norm(c, 0, FINE) == pytest.approx(2 / np.pi, rel=1e-6)
    assert sobolev_norm(c, 1, FINE) == pytest.approx(2 / np.pi + 4.0, rel=1e-6)


def test_sobolev_norm_rejects_negative_order():
    with pytest.raises(ValueError):
        sobolev_norm(FourierFunction.constant(1.0, 2), -1)


def test_resize_and_with_mean(rng):
    f = random_fourier(rng, 8, degree=4)
    g = f.resize(16).resize(8)
    assert np.array_equal(f.coeffs, g.coeffs)
    assert f.resize(2).coeff(3) == 0.0
    assert f.with_mean(2.5).mean == 2.5


def test_random_fourier_mean_zero(rng):
    f = random_fourier(rng, 12, mean_zero=True)
    assert f.mean == 0.0
    assert all(f.coeff(k) == 0.0 for k in range(7, 13))


@pytest.mark.parametrize("antiperiodic", [False, True])
def test_bump_observable_normalization(antiperiodic):
    psi = bump_observable((0.55, 0.75), 32, antiperiodic=antiperiodic)
    assert psi.mean == 0.0
    assert np.sum(np.abs(psi.coeffs) ** 2) == pytest.approx(1.0, abs=1e-12)
    if antiperiodic:
        assert all(psi.coeff(k) == 0.0 for k in range(0, 33, 2))


def test_bump_observable_rejects_bad_arc():
    with pytest.raises(ValueError):
        bump_observable((0.7, 0.2), 16)
