"""Statistical stability and linear response rates measured against eps."""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..density import DEFAULT_TOL, DensityResult, equivariant_density
from ..dynamics import DrivingOrbit, ParamCircleMap
from ..operators import TransferCache, apply, assemble
from ..spectral import FourierFunction, random_fourier, sobolev_norm
from ..utils import TaskExecutor, get_logger, log_log_fit
from .derivative_operator import derivative_operator
from .series import ResponseResult, response_series

logger = get_logger(__name__)

# Errors at or below this level are treated as exactly zero
EXACT_TOL = 1e-13


class FitRefusedError(ValueError):
    """Raised when a rate fit would rest on unreliable data."""


@dataclass(frozen=True)
class RateFit:
    """
    Power-law fit errors ≈ prefactor * |eps|^exponent.

    Attributes:
        eps_list: The eps grid, strictly decreasing in magnitude
        errors: Measured error per eps
        fitted_exponent: Slope of the log-log fit (inf when exact)
        fitted_prefactor: exp(intercept) of the log-log fit
        r_squared: R² of the fit
        exact: All errors vanish to 1e-13; no fit was made
    """

    eps_list: Tuple[float, ...]
    errors: Tuple[float, ...]
    fitted_exponent: float
    fitted_prefactor: float
    r_squared: float
    exact: bool = False


@dataclass(frozen=True)
class ResponseValidation:
    """
    Difference-quotient check of the response series.

    Attributes:
        fit: Fit of ||(h_eps - h_0)/eps - h_hat||_{W^{ell,1}} against |eps|
        response: Response series the quotients are compared against
        observable_fd: Central difference of ∫ phi h_eps dm at the smallest |eps|
        observable_response: ∫ phi h_hat dm
    """

    fit: RateFit
    response: ResponseResult
    observable_fd: Optional[float]
    observable_response: Optional[float]


def dyadic_eps_grid(eps0: float, first: int = 3, last: int = 10) -> List[float]:
    """eps0 * 2^-k for k = first..last."""
    return [eps0 * 2.0 ** (-k) for k in range(first, last + 1)]


def check_eps_list(eps_list: Sequence[float]) -> List[float]:
    """
    Nonzero entries of an eps grid, validated.

    A 0 entry is the reference value and is dropped.

    Raises:
        ValueError: Fewer than three nonzero values or magnitudes not strictly decreasing
    """
    values = [float(e) for e in eps_list if e != 0.0]
    if len(values) < 3:
        raise ValueError("an eps grid needs at least 3 nonzero values")
    magnitudes = np.abs(values)
    if np.any(np.diff(magnitudes) >= 0.0):
        raise ValueError("eps grid must be strictly decreasing in magnitude")
    return values


def rate_fit(eps_list: Sequence[float], errors: Sequence[float]) -> RateFit:
    """
    Log-log least squares of errors against |eps|.

    Raises:
        FitRefusedError: If some but not all errors vanish, leaving under two points
    """
    eps = tuple(float(e) for e in eps_list)
    errs = tuple(float(e) for e in errors)
    if max(errs) <= EXACT_TOL:
        return RateFit(eps, errs, float("inf"), 0.0, 1.0, exact=True)

    usable = [(abs(e), r) for e, r in zip(eps, errs) if r > EXACT_TOL]
    if len(usable) < 2:
        raise FitRefusedError(f"only {len(usable)} nonzero error(s) to fit")
    fit = log_log_fit([u[0] for u in usable], [u[1] for u in usable])
    return RateFit(eps, errs, fit.slope, float(np.exp(fit.intercept)), fit.r_squared)


def _check_admissible(orbit: DrivingOrbit, eps_values: Sequence[float]) -> None:
    for circle_map in orbit.registry.values():
        bad = [e for e in eps_values if not circle_map.admits(e)]
        if bad:
            raise ValueError(f"eps {bad} outside the admissible range {circle_map.eps_range} of {circle_map.name}")


def _densities_over_eps(
    orbit: DrivingOrbit,
    fiber: int,
    eps_values: Sequence[float],
    tol: float,
    modes: int,
    quadrature: Optional[int],
    threads: int,
    cache: Optional[TransferCache],
) -> Dict[float, DensityResult]:
    tasks = [(eps, (orbit, eps, fiber, 1, tol, modes, quadrature, None, None, cache)) for eps in eps_values]
    results = TaskExecutor(threads).map(equivariant_density, tasks)

    table = {}
    for result in results:
        if not result.success:
            raise FitRefusedError(f"density at eps={result.key} failed: {result.error}")
        if not result.output.converged:
            raise FitRefusedError(
                f"density on fiber {fiber} at eps={result.key} did not converge "
                f"(defect {result.output.cauchy_defect:.3e})"
            )
        table[result.key] = result.output
    return table


def stability_rate(
    orbit: DrivingOrbit,
    fiber: int,
    eps_list: Sequence[float],
    ell: int = 1,
    tol: float = DEFAULT_TOL,
    modes: int = 32,
    quadrature: Optional[int] = None,
    threads: int = 1,
    cache: Optional[TransferCache] = None,
) -> RateFit:
    """
    Fit ||h_{omega,eps} - h_{omega,0}||_{W^{ell,1}} against |eps|.

    Args:
        orbit: Driving window
        fiber: Fiber omega
        eps_list: eps grid (>= 3 nonzero values, decreasing magnitude)
        ell: Sobolev order of the error
        tol: Density tolerance
        modes: Truncation order M
        quadrature: Grid size Q
        threads: Worker threads over eps
        cache: Matrix cache

    Returns:
        RateFit

    Raises:
        FitRefusedError: If any density fails to converge
        ValueError: If the eps grid is malformed or inadmissible
    """
    eps_values = check_eps_list(eps_list)
    _check_admissible(orbit, eps_values)
    table = _densities_over_eps(orbit, fiber, [0.0] + eps_values, tol, modes, quadrature, threads, cache)

    reference = table[0.0].h
    errors = [sobolev_norm(table[e].h - reference, ell, quadrature) for e in eps_values]
    fit = rate_fit(eps_values, errors)
    logger.info(f"Stability on fiber {fiber}: exponent {fit.fitted_exponent:.4g} (R² {fit.r_squared:.4f})")
    return fit


def response_validation(
    orbit: DrivingOrbit,
    fiber: int,
    eps_list: Sequence[float],
    ell: int = 1,
    observable: Optional[FourierFunction] = None,
    response: Optional[ResponseResult] = None,
    tol: float = 1e-12,
    modes: int = 32,
    quadrature: Optional[int] = None,
    threads: int = 1,
    cache: Optional[TransferCache] = None,
) -> ResponseValidation:
    """
    Fit ||(h_eps - h_0)/eps - h_hat||_{W^{ell,1}} against |eps|.

    The observable check compares (∫ phi h_{eps} - ∫ phi h_{-eps}) / (2 eps)
    at the smallest |eps| with ∫ phi h_hat dm.

    Args:
        orbit: Driving window
        fiber: Fiber omega
        eps_list: eps grid (>= 3 nonzero values, decreasing magnitude)
        ell: Sobolev order of the error
        observable: phi for the observable-level check
        response: Precomputed response series (computed when omitted)
        tol: Density tolerance; difference quotients amplify it by 1/|eps|
        modes: Truncation order M
        quadrature: Grid size Q
        threads: Worker threads over eps
        cache: Matrix cache

    Returns:
        ResponseValidation

    Raises:
        FitRefusedError: If any density fails to converge
    """
    eps_values = check_eps_list(eps_list)
    smallest = eps_values[-1]
    _check_admissible(orbit, eps_values + [-smallest])
    if response is None:
        response = response_series(
            orbit, fiber, observable=observable, modes=modes, quadrature=quadrature, tol=tol, cache=cache
        )

    table = _densities_over_eps(
        orbit, fiber, [0.0] + eps_values + [-smallest], tol, modes, quadrature, threads, cache
    )
    reference = table[0.0].h
    errors = [
        sobolev_norm((table[e].h - reference) / e - response.h_hat, ell, quadrature) for e in eps_values
    ]
    fit = rate_fit(eps_values, errors)

    observable_fd = None
    if observable is not None:
        phi = observable.resize(modes)
        observable_fd = (phi.inner(table[smallest].h) - phi.inner(table[-smallest].h)) / (2.0 * smallest)

    logger.info(f"Response on fiber {fiber}: quotient error exponent {fit.fitted_exponent:.4g}")
    return ResponseValidation(
        fit=fit,
        response=response,
        observable_fd=observable_fd,
        observable_response=response.observable_response,
    )


def operator_taylor_check(
    circle_map: ParamCircleMap,
    phi: FourierFunction,
    eps_list: Sequence[float],
    quadrature: Optional[int] = None,
) -> RateFit:
    """Fit ||(L_eps - L_0) phi / eps - Lhat phi||_{W^{1,1}} against |eps|."""
    eps_values = check_eps_list(eps_list)
    modes = phi.modes
    base = assemble(circle_map, 0.0, modes, quadrature)
    unperturbed = apply(base, phi)
    lhat = derivative_operator(circle_map, phi, base, quadrature)

    errors = []
    for eps in eps_values:
        moved = apply(assemble(circle_map, eps, modes, quadrature), phi)
        errors.append(sobolev_norm((moved - unperturbed) / eps - lhat, 1, quadrature))
    return rate_fit(eps_values, errors)


def perturbation_norm(
    circle_map: ParamCircleMap,
    eps: float,
    ell: int,
    trials: int = 16,
    modes: int = 32,
    quadrature: Optional[int] = None,
    seed: int = 0,
) -> float:
    """
    max over tests of ||(L_eps - L_0) f||_{W^{ell,1}} / ||f||_{W^{ell+1,1}}.

    The tests are the trigonometric basis up to M/4 and ``trials`` random functions.
    """
    if eps == 0.0:
        return 0.0
    rng = np.random.default_rng(seed)
    tests = [FourierFunction.constant(1.0, modes)]
    for k in range(1, max(1, modes // 4) + 1):
        tests += [FourierFunction.cosine(k, modes), FourierFunction.sine(k, modes)]
    tests += [random_fourier(rng, modes) for _ in range(trials)]

    difference = assemble(circle_map, eps, modes, quadrature).entries - assemble(circle_map, 0.0, modes, quadrature).entries
    best = 0.0
    for f in tests:
        image = FourierFunction(difference @ f.coeffs)
        best = max(best, sobolev_norm(image, ell, quadrature) / sobolev_norm(f, ell + 1, quadrature))
    return best


def perturbation_norms(
    circle_map: ParamCircleMap,
    eps_list: Sequence[float],
    ells: Sequence[int] = (0, 1, 2),
    trials: int = 16,
    modes: int = 32,
    quadrature: Optional[int] = None,
    seed: int = 0,
    threads: int = 1,
) -> Dict[int, RateFit]:
    """
    Fit the one-step perturbation norm against |eps| for each Sobolev order.

    Args:
        circle_map: Fiber family
        eps_list: eps grid (>= 3 nonzero values, decreasing magnitude)
        ells: Sobolev orders ell (the tests are normalized in W^{ell+1,1})
        trials: Random test functions per norm
        modes: Truncation order M
        quadrature: Grid size Q
        seed: Seed of the random tests
        threads: Worker threads over (ell, eps)

    Returns:
        RateFit per ell
    """
    eps_values = check_eps_list(eps_list)
    bad = [e for e in eps_values if not circle_map.admits(e)]
    if bad:
        raise ValueError(f"eps {bad} outside the admissible range {circle_map.eps_range} of {circle_map.name}")

    tasks = [
        ((ell, eps), (circle_map, eps, ell, trials, modes, quadrature, seed))
        for ell in ells
        for eps in eps_values
    ]
    results = TaskExecutor(threads).map(perturbation_norm, tasks)
    failed = [r for r in results if not r.success]
    if failed:
        raise FitRefusedError(f"perturbation norm {failed[0].key} failed: {failed[0].error}")

    values = {r.key: r.output for r in results}
    fits = {}
    for ell in ells:
        fits[ell] = rate_fit(eps_values, [values[(ell, eps)] for eps in eps_values])
        logger.info(f"{circle_map.name}: ell={ell} perturbation exponent {fits[ell].fitted_exponent:.4g}")
    return fits
