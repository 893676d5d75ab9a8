"""Decay of mean-zero densities, top Lyapunov exponent and backward boundedness."""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from ..dynamics import DrivingOrbit
from ..operators import (
    TransferCache,
    TransferMatrix,
    apply,
    fiber_matrix,
    iterate_forward,
    iterate_pullback,
    operator_norm_estimate,
)
from ..spectral import FourierFunction, random_fourier, sobolev_norm
from ..utils import get_logger, linear_fit, tail_window

logger = get_logger(__name__)

# Norms below this fraction of the initial norm count as annihilated
ANNIHILATION_RTOL = 1e-13


@dataclass(frozen=True)
class DecayReport:
    """
    Exponential decay of L^n f for mean-zero test functions.

    Attributes:
        rates: Fitted slope of log ||L^n f||_{W^{ell,1}} per test (-inf if annihilated)
        lambda_hat: -max(rates)
        K_hat: Smallest K with ||L^n f|| <= K e^{-lambda_hat n} ||f|| on the data
        r_squared: R² of each fit (1.0 for annihilated tests)
        annihilated: Whether some test reached zero within n_max steps
        norms: Norm trajectory n = 0..n_max of each test
    """

    rates: Tuple[float, ...]
    lambda_hat: float
    K_hat: float
    r_squared: Tuple[float, ...]
    annihilated: bool
    norms: Tuple[Tuple[float, ...], ...]

    @property
    def decaying(self) -> bool:
        return self.lambda_hat > 0.0


@dataclass(frozen=True)
class BoundednessReport:
    """
    ||L^n_{sigma^{-n} omega} f||_{W^{ell,1}} for unit f along the pullback.

    Attributes:
        values: Max over tests for n = 0..n_max
        d_hat: max(values), the D_ell surrogate
        bounded: No growth trend (last-quartile mean <= 2 x max over the first half)
    """

    values: Tuple[float, ...]
    d_hat: float
    bounded: bool


def _mean_zero_tests(
    tests: Union[int, Sequence[FourierFunction]],
    modes: int,
    seed: int,
) -> List[FourierFunction]:
    if isinstance(tests, int):
        rng = np.random.default_rng(seed)
        return [random_fourier(rng, modes, mean_zero=True) for _ in range(tests)]
    functions = [f.resize(modes) for f in tests]
    if any(abs(f.mean) > 1e-12 for f in functions):
        raise ValueError("decay tests must have mean zero")
    return functions


def decay_rate(
    orbit: DrivingOrbit,
    eps: float,
    fiber: int,
    ell: int,
    n_max: int,
    tests: Union[int, Sequence[FourierFunction]] = 8,
    modes: int = 32,
    quadrature: Optional[int] = None,
    seed: int = 0,
    cache: Optional[TransferCache] = None,
) -> DecayReport:
    """
    Forward decay rate of mean-zero functions from ``fiber``.

    The log norms are fitted over n in [n_max/2, n_max]. A trajectory that is
    annihilated (exact zero, e.g. mode halving) gets slope -inf.

    Args:
        orbit: Driving window
        eps: Parameter value
        fiber: Starting fiber
        ell: Sobolev order
        n_max: Number of forward steps (at least 4)
        tests: Number of random mean-zero tests, or explicit functions
        modes: Truncation order M
        quadrature: Grid size Q
        seed: Seed for random tests
        cache: Matrix cache

    Returns:
        DecayReport
    """
    window = tail_window(n_max)
    functions = _mean_zero_tests(tests, modes, seed)

    rates, r_squared, trajectories = [], [], []
    annihilated = False
    for f in functions:
        norms = [sobolev_norm(f, ell, quadrature)]
        for image in iterate_forward(orbit, eps, f, fiber, n_max, quadrature, cache):
            norms.append(sobolev_norm(image, ell, quadrature))
        trajectories.append(tuple(norms))

        if min(norms) <= ANNIHILATION_RTOL * norms[0]:
            annihilated = True
            rates.append(float("-inf"))
            r_squared.append(1.0)
            continue
        fit = linear_fit(list(window), [np.log(norms[n]) for n in window])
        rates.append(fit.slope)
        r_squared.append(fit.r_squared)

    lambda_hat = 0.0 - max(rates)
    K_hat = 1.0
    if np.isfinite(lambda_hat):
        for norms in trajectories:
            for n, value in enumerate(norms):
                K_hat = max(K_hat, value / norms[0] * np.exp(lambda_hat * n))
    else:
        K_hat = max(max(norms) / norms[0] for norms in trajectories)

    if lambda_hat > 0.0:
        logger.info(f"Decay from fiber {fiber} at eps={eps}: lambda_hat = {lambda_hat:.6g}")
    else:
        logger.warning(f"No decay from fiber {fiber} at eps={eps}: lambda_hat = {lambda_hat:.6g}")

    return DecayReport(
        rates=tuple(rates),
        lambda_hat=lambda_hat,
        K_hat=float(K_hat),
        r_squared=tuple(r_squared),
        annihilated=annihilated,
        norms=tuple(trajectories),
    )


def lyapunov_top(
    orbit: DrivingOrbit,
    eps: float,
    ell: int,
    n_max: int,
    trials: int = 16,
    fiber: int = 0,
    modes: int = 32,
    quadrature: Optional[int] = None,
    seed: int = 0,
    cache: Optional[TransferCache] = None,
) -> float:
    """
    Slope of log ||L^n_omega||_{W^{ell,1}} in n, the top Lyapunov exponent.

    The same test functions (trigonometric basis, the constant 1 and
    ``trials`` random functions) are used for every n.
    """
    rng = np.random.default_rng(seed)
    tests = [FourierFunction.constant(1.0, modes)]
    for k in range(1, max(1, modes // 2) + 1):
        tests += [FourierFunction.cosine(k, modes), FourierFunction.sine(k, modes)]
    tests += [random_fourier(rng, modes) for _ in range(trials)]

    product = np.eye(2 * modes + 1, dtype=complex)
    log_norms = [0.0]
    for n in range(1, n_max + 1):
        product = fiber_matrix(orbit, eps, fiber + n - 1, modes, quadrature, cache).entries @ product
        estimate = operator_norm_estimate(TransferMatrix(modes, product.copy()), ell, trials, tests=tests, points=quadrature)
        log_norms.append(float(np.log(estimate)))

    window = tail_window(n_max)
    fit = linear_fit(list(window), [log_norms[n] for n in window])
    logger.info(f"Top Lyapunov exponent from fiber {fiber} (ell={ell}): {fit.slope:.3e}")
    return fit.slope


def backward_boundedness(
    orbit: DrivingOrbit,
    fiber: int,
    ell: int,
    n_max: int,
    eps: float = 0.0,
    tests: Union[int, Sequence[FourierFunction]] = 4,
    modes: int = 32,
    quadrature: Optional[int] = None,
    seed: int = 0,
    cache: Optional[TransferCache] = None,
) -> BoundednessReport:
    """
    Pullback norms of unit test functions up to depth n_max.

    Args:
        orbit: Driving window
        fiber: Fiber the pullback lands on
        ell: Sobolev order
        n_max: Maximal depth
        eps: Parameter value
        tests: Number of random tests, or explicit functions (normalized here)
        modes: Truncation order M
        quadrature: Grid size Q
        seed: Seed for random tests
        cache: Matrix cache

    Returns:
        BoundednessReport
    """
    if isinstance(tests, int):
        rng = np.random.default_rng(seed)
        functions = [random_fourier(rng, modes) for _ in range(tests)]
    else:
        functions = [f.resize(modes) for f in tests]
    functions = [f / sobolev_norm(f, ell, quadrature) for f in functions]

    values = [1.0]
    for product in iterate_pullback(orbit, eps, fiber, n_max, modes, quadrature, cache):
        values.append(max(sobolev_norm(apply(product, f), ell, quadrature) for f in functions))

    half = values[: len(values) // 2 + 1]
    quarter = values[-max(1, len(values) // 4):]
    bounded = float(np.mean(quarter)) <= 2.0 * max(half)
    if not bounded:
        logger.warning(f"Pullback norms on fiber {fiber} grow (last quarter mean {np.mean(quarter):.4g})")
    return BoundednessReport(values=tuple(values), d_hat=max(values), bounded=bounded)
