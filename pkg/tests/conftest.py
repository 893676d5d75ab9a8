"""Shared fixtures for the quenched response toolkit tests."""

import numpy as np
import pytest

from src.dynamics import builtin_family, constant_orbit
from src.operators import TransferCache


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def cache():
    return TransferCache()


@pytest.fixture(scope="session")
def doubling():
    return builtin_family("doubling")


@pytest.fixture(scope="session")
def identity_map():
    return builtin_family("identity")


@pytest.fixture(scope="session")
def additive():
    """2x + 0.1 sin(2πx) + eps sin(2πx)."""
    return builtin_family("additive")


@pytest.fixture(scope="session")
def additive_fixed():
    """2x + 0.1 sin(2πx) with a vanishing perturbation."""
    return builtin_family("additive", {"d_amplitude": 0.0})


@pytest.fixture(scope="session")
def composed_cosine():
    """D_eps o (2x) with psi = cos(2πx)."""
    return builtin_family("doubling_composed", {"modes": 32})


@pytest.fixture
def doubling_orbit(doubling):
    return constant_orbit(doubling, window=16)


@pytest.fixture
def additive_orbit(additive):
    return constant_orbit(additive, window=80)


@pytest.fixture
def mixture_registry():
    return {
        "A": builtin_family("additive"),
        "B": builtin_family("additive", {"beta": 3, "amplitude": 0.05, "phase": 0.3, "d_frequency": 2, "d_amplitude": 0.5}),
    }
