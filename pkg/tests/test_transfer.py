"""Tests for Galerkin transfer matrices and their compositions."""

import numpy as np
import pytest

from src.dynamics import WindowError, constant_orbit, sample_orbit
from src.operators import (
    ModeMismatchError,
    TransferMatrix,
    apply,
    apply_adjoint,
    assemble,
    compose_forward,
    fiber_matrix,
    iterate_pullback,
    operator_norm_estimate,
    push_forward,
)
from src.spectral import AliasingError, FourierFunction, random_fourier, uniform_grid
from src.utils import TaskExecutor

FINE = 1 << 14


def test_doubling_halves_even_modes(doubling):
    A = assemble(doubling, 0.0, 8)
    assert np.allclose(apply(A, FourierFunction.cosine(1, 8)).coeffs, 0.0, atol=1e-14)
    halved = apply(A, FourierFunction.cosine(2, 8))
    assert np.allclose(halved.coeffs, FourierFunction.cosine(1, 8).coeffs, atol=1e-14)


def test_identity_matrix(identity_map):
    A = assemble(identity_map, 0.0, 6)
    assert np.allclose(A.entries, np.eye(13), atol=1e-14)


def test_quadrature_must_oversample(doubling):
    with pytest.raises(AliasingError):
        assemble(doubling, 0.0, 8, quadrature=35)


def test_entries_are_read_only(doubling):
    A = assemble(doubling, 0.0, 4)
    with pytest.raises(ValueError):
        A.entries[0, 0] = 1.0


def test_mass_conservation_and_positivity(additive, rng):
    A = assemble(additive, 0.05, 32)
    for _ in range(8):
        f = random_fourier(rng, 32)
        assert abs(apply(A, f).mean - f.mean) <= 1e-10 * np.max(np.abs(f.coeffs))
    image = apply(A, FourierFunction.constant(1.0, 32))
    assert image.mean == pytest.approx(1.0, abs=1e-12)
    assert np.min(image.grid_values()) > -1e-8


def test_duality_with_composition(additive, rng):
    modes = 32
    A = assemble(additive, 0.05, modes)
    x = uniform_grid(4096)
    image = np.mod(additive.lift(0.05, x), 1.0)
    for _ in range(4):
        f = random_fourier(rng, modes)
        phi = random_fourier(rng, modes)
        lhs = phi.inner(apply(A, f))
        rhs = float(np.mean(f.evaluate(x) * phi.evaluate(image)))
        assert lhs == pytest.approx(rhs, abs=1e-8)


def test_adjoint_is_koopman(additive, rng):
    A = assemble(additive, 0.0, 16)
    f = random_fourier(rng, 16)
    phi = random_fourier(rng, 16)
    assert apply_adjoint(A, phi).inner(f) == pytest.approx(phi.inner(apply(A, f)), abs=1e-13)


def test_mode_mismatch(doubling):
    A = assemble(doubling, 0.0, 4)
    with pytest.raises(ModeMismatchError):
        apply(A, FourierFunction.constant(1.0, 5))
    with pytest.raises(ModeMismatchError):
        A @ TransferMatrix.identity(5)


def test_compose_forward(doubling_orbit):
    identity = compose_forward(doubling_orbit, 0.0, 0, 0, 8)
    assert np.allclose(identity.entries, np.eye(17))
    single = compose_forward(doubling_orbit, 0.0, 1, 0, 8)
    assert np.allclose(single.entries, fiber_matrix(doubling_orbit, 0.0, 0, 8).entries)
    three = compose_forward(doubling_orbit, 0.0, 3, 0, 8)
    image = apply(three, FourierFunction.cosine(8, 8))
    assert np.allclose(image.coeffs, FourierFunction.cosine(1, 8).coeffs, atol=1e-14)


def test_compose_forward_window(doubling_orbit):
    with pytest.raises(WindowError):
        compose_forward(doubling_orbit, 0.0, 5, doubling_orbit.hi - 2, 8)


def test_composition_conserves_mass(mixture_registry, rng):
    orbit = sample_orbit("iid", 3, 8, {"alphabet": ["A", "B"]}, mixture_registry)
    product = compose_forward(orbit, 0.05, 6, -3, 24)
    f = random_fourier(rng, 24)
    assert apply(product, f).mean == pytest.approx(f.mean, abs=1e-9)
    assert np.min(apply(product, FourierFunction.constant(1.0, 24)).grid_values()) > -1e-6


def test_push_forward_matches_compose(mixture_registry, rng):
    orbit = sample_orbit("iid", 3, 8, {"alphabet": ["A", "B"]}, mixture_registry)
    f = random_fourier(rng, 16)
    pushed = push_forward(orbit, 0.0, f, -2, 4)
    composed = apply(compose_forward(orbit, 0.0, 4, -2, 16), f)
    assert np.allclose(pushed.coeffs, composed.coeffs, atol=1e-13)
    assert push_forward(orbit, 0.0, f, 0, 0) is f


def test_pullback_order(mixture_registry):
    orbit = sample_orbit("fixed", 0, 4, {"sequence": ["A", "B"]}, mixture_registry)
    products = list(iterate_pullback(orbit, 0.0, 2, 2, 12))
    expected = fiber_matrix(orbit, 0.0, 1, 12).entries @ fiber_matrix(orbit, 0.0, 0, 12).entries
    assert np.allclose(products[1].entries, expected)
    with pytest.raises(WindowError):
        list(iterate_pullback(orbit, 0.0, 0, 5, 12))


def test_operator_norm_identity(identity_map):
    A = assemble(identity_map, 0.0, 16)
    for ell in (0, 1, 2):
        assert operator_norm_estimate(A, ell) >= 1.0 - 1e-10


def test_operator_norm_doubling(doubling):
    A = assemble(doubling, 0.0, 16)
    value = operator_norm_estimate(A, 0, points=FINE)
    assert 0.0 < value <= 1.0 + 1e-4
    contraction = operator_norm_estimate(A, 1, mean_zero=True, seminorm=True, points=FINE)
    assert contraction <= 0.5 + 1e-4


def test_operator_norm_needs_trials(doubling):
    with pytest.raises(ValueError):
        operator_norm_estimate(assemble(doubling, 0.0, 4), 1, trials=4)


def test_cache_reuses_matrices(doubling, cache):
    first = cache.get(doubling, 0.0, 8)
    assert cache.get(doubling, 0.0, 8) is first
    assert cache.hits == 1 and cache.misses == 1
    cache.get(doubling, 0.0, 8, quadrature=200)
    assert len(cache) == 2
    cache.clear()
    assert len(cache) == 0


def test_cache_concurrent_insertion(additive, cache):
    tasks = [(k, (additive, 0.01, 16)) for k in range(8)]
    results = TaskExecutor(4).map(cache.get, tasks)
    assert all(r.success for r in results)
    assert all(r.output is results[0].output for r in results)
    assert len(cache) == 1


def test_constant_orbit_uses_one_matrix(additive, cache):
    orbit = constant_orbit(additive, 4)
    compose_forward(orbit, 0.0, 6, -3, 8, cache=cache)
    assert len(cache) == 1
