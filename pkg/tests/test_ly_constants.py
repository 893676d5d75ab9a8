"""Tests for symbolic and empirical Lasota-Yorke constants."""

import pytest

from src.dynamics import builtin_family, constant_orbit
from src.lasota_yorke import ly_constants, symbolic_constants


def test_order_zero_constants():
    assert symbolic_constants(2.0, 3.0, 0) == (1.0, 0.0)


def test_first_order_constants_for_doubling():
    # G majorants (x2, x1) at K = 2 peak at 2
    C, B = symbolic_constants(2.0, 2.0, 1)
    assert C == pytest.approx(1.5)
    assert B == pytest.approx(1.0 + 0.25 * 2.0)


@pytest.mark.parametrize("ell", [1, 2, 3])
def test_linear_fiber_contraction(doubling, ell):
    report = ly_constants(constant_orbit(doubling, 1), 0.0, ell, trials=16, modes=16)
    assert report.per_fiber_contraction[0] == pytest.approx(2.0**-ell, abs=1e-8)
    assert all(report.empirical_LY_holds)


@pytest.mark.parametrize(
    "family, params, eps",
    [
        ("additive", {}, 0.05),
        ("linear_eps2", {}, 0.5),
    ],
)
@pytest.mark.parametrize("ell", [1, 2, 3])
def test_empirical_constants_below_symbolic(family, params, eps, ell):
    orbit = constant_orbit(builtin_family(family, params), 1)
    report = ly_constants(orbit, eps, ell, trials=100, modes=32, eps_grid=[eps, eps / 2, eps / 4])
    assert all(report.empirical_LY_holds)
    assert all(c_hat <= c for c, c_hat in zip(report.per_fiber_C, report.empirical_C))
    assert report.fibers == (-1, 0, 1)


def test_order_beyond_smoothness(doubling):
    with pytest.raises(ValueError, match="smoothness"):
        ly_constants(constant_orbit(doubling, 0), 0.0, 6, trials=16, modes=8)
