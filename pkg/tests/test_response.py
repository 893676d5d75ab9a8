"""Tests for the derivative operator, the response series and rate validation."""

import numpy as np
import pytest

from src.dynamics import ParamCircleMap, WindowError, builtin_family, constant_orbit, sample_orbit
from src.operators import assemble
from src.response import (
    FitRefusedError,
    appendix_derivative_operator,
    check_eps_list,
    derivative_operator,
    dyadic_eps_grid,
    koopman_observable_response,
    operator_taylor_check,
    perturbation_norms,
    rate_fit,
    response_series,
    response_validation,
    stability_rate,
)
from src.spectral import FourierFunction, random_fourier

COSINE = FourierFunction.cosine(1, 32)


def test_closed_form_response(composed_cosine):
    orbit = constant_orbit(composed_cosine, 40)
    result = response_series(orbit, 0, observable=COSINE)
    assert np.allclose(result.h_hat.coeffs, COSINE.coeffs, atol=1e-8)
    assert result.series_depth == 1
    assert result.tail_estimate == 0.0
    assert result.h_hat.mean == 0.0
    assert result.observable_response == pytest.approx(0.5, abs=1e-8)


def test_koopman_route_matches_density_route(mixture_registry):
    orbit = sample_orbit("iid", 4, 80, {"alphabet": ["A", "B"]}, mixture_registry)
    density_form = response_series(orbit, 0, depth=20, observable=COSINE)
    koopman = koopman_observable_response(orbit, 0, COSINE, 20)
    assert koopman == pytest.approx(density_form.observable_response, abs=1e-8)


def test_derivative_operator_matches_composed_form(composed_cosine, rng):
    f = random_fourier(rng, 32, degree=8)
    matrix = assemble(composed_cosine, 0.0, 32)
    general = derivative_operator(composed_cosine, f, matrix)
    composed = appendix_derivative_operator(matrix, composed_cosine.metadata["S"], f)
    assert np.allclose(general.coeffs, composed.coeffs, atol=1e-10)


def test_operator_taylor_remainder_is_first_order(additive, rng):
    phi = random_fourier(rng, 32, degree=8)
    fit = operator_taylor_check(additive, phi, dyadic_eps_grid(0.1))
    assert fit.fitted_exponent >= 0.9


def test_response_validation_closed_form(composed_cosine):
    orbit = constant_orbit(composed_cosine, 60)
    report = response_validation(orbit, 0, dyadic_eps_grid(1.0, 3, 10), observable=COSINE)
    assert report.fit.fitted_exponent >= 0.8
    assert report.observable_fd == pytest.approx(report.observable_response, abs=1e-4)


def test_stability_rate_is_linear(additive):
    fit = stability_rate(constant_orbit(additive, 80), 0, dyadic_eps_grid(0.1))
    assert fit.fitted_exponent >= 0.9
    assert fit.r_squared >= 0.98
    assert len(fit.errors) == 8


def test_stability_rate_is_quadratic_for_eps_squared_family():
    circle_map = builtin_family("linear_eps2")
    fit = stability_rate(constant_orbit(circle_map, 80), 0, dyadic_eps_grid(0.5), tol=1e-12)
    assert fit.fitted_exponent >= 1.8


def test_random_orbit_response(mixture_registry):
    orbit = sample_orbit("iid", 1, 80, {"alphabet": ["A", "B"]}, mixture_registry)
    report = response_validation(orbit, 0, dyadic_eps_grid(0.1, 3, 8))
    errors = report.fit.errors
    assert all(later < earlier for earlier, later in zip(errors, errors[1:]))
    assert report.fit.fitted_exponent >= 0.7


@pytest.mark.slow
@pytest.mark.parametrize("seed", [1, 2, 3])
@pytest.mark.parametrize("law", ["iid", "markov", "periodic"])
def test_response_rate_over_driving_laws(mixture_registry, seed, law):
    params = {
        "iid": {"alphabet": ["A", "B"]},
        "markov": {"alphabet": ["A", "B"], "transition": [[0.8, 0.2], [0.4, 0.6]]},
        "periodic": {"sequence": ["A", "A", "B"]},
    }[law]
    family = "fixed" if law == "periodic" else law
    orbit = sample_orbit(family, seed, 80, params, mixture_registry)
    report = response_validation(orbit, 0, dyadic_eps_grid(0.1))
    assert report.fit.fitted_exponent >= 0.7


def test_response_needs_room_in_window(composed_cosine):
    orbit = constant_orbit(composed_cosine, 3)
    with pytest.raises(WindowError):
        response_series(orbit, 0, depth=5)
    with pytest.raises(WindowError):
        response_series(constant_orbit(composed_cosine, 1), 0)


def test_derivative_operator_needs_eps_derivatives():
    plain = ParamCircleMap(
        name="plain",
        degree=2,
        lift=lambda eps, x: 2.0 * np.asarray(x),
        x_derivatives=(lambda eps, x: np.full_like(np.asarray(x, dtype=float), 2.0),),
    )
    with pytest.raises(ValueError, match="eps-derivatives"):
        derivative_operator(plain, COSINE)


def test_rate_fit_cases():
    eps = [0.1, 0.05, 0.025, 0.0125]
    fit = rate_fit(eps, [3.0 * e**2 for e in eps])
    assert fit.fitted_exponent == pytest.approx(2.0)
    assert fit.fitted_prefactor == pytest.approx(3.0)
    assert fit.r_squared == pytest.approx(1.0)

    exact = rate_fit(eps, [0.0] * 4)
    assert exact.exact and exact.fitted_exponent == float("inf")

    with pytest.raises(FitRefusedError):
        rate_fit(eps, [1e-3, 0.0, 0.0, 0.0])


def test_check_eps_list():
    assert check_eps_list([0.0, 0.1, -0.05, 0.01]) == [0.1, -0.05, 0.01]
    with pytest.raises(ValueError, match="at least 3"):
        check_eps_list([0.1, 0.05])
    with pytest.raises(ValueError, match="decreasing"):
        check_eps_list([0.1, 0.2, 0.05])


def test_perturbation_norms_are_linear(additive):
    fits = perturbation_norms(additive, dyadic_eps_grid(0.1, 3, 7), ells=(0, 1), trials=4, modes=16)
    assert sorted(fits) == [0, 1]
    assert all(fit.fitted_exponent >= 0.9 for fit in fits.values())
    with pytest.raises(ValueError, match="admissible"):
        perturbation_norms(additive, [0.4, 0.2, 0.1])
