"""Expansion-on-average and covering diagnostics along a driving orbit."""

from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from ..spectral import uniform_grid
from ..utils import get_logger
from .circle_map import DegenerateMapError, ParamCircleMap
from .driving import DrivingOrbit

logger = get_logger(__name__)

# Smallest per-fiber expansion accepted as a local diffeomorphism
DEGENERATE_LAMBDA = 1e-8

# Arc lengths within this distance of 1 count as covering the circle
_COVER_TOL = 1e-12


@dataclass(frozen=True)
class ExpansionReport:
    """
    Per-fiber expansion of a sampled window at one parameter value.

    Attributes:
        fibers: Fiber indices covered by the report
        lambda_min_per_fiber: min |T'| per fiber
        mean_log_lambda: Arithmetic mean of log(lambda_min_per_fiber)
        K_per_fiber: max over orders 1..r of sup |T^(i)| per fiber
        lambda_lower_per_fiber: Per-fiber min over the eps-grid (equal to
            lambda_min_per_fiber when no grid is given)
    """

    fibers: Tuple[int, ...]
    lambda_min_per_fiber: Tuple[float, ...]
    mean_log_lambda: float
    K_per_fiber: Tuple[float, ...]
    lambda_lower_per_fiber: Tuple[float, ...]

    @property
    def expanding(self) -> bool:
        """Whether the window expands on average."""
        return self.mean_log_lambda > 0.0


@dataclass(frozen=True)
class CoveringTime:
    """Least n with |T^n(J)| >= 1, or the cap with ``covered`` False."""

    steps: int
    covered: bool


def min_expansion(circle_map: ParamCircleMap, eps: float, grid: int = 1024) -> float:
    """
    min over x of |T'(eps, x)| by grid search and bounded refinement.

    Args:
        circle_map: Map to inspect
        eps: Parameter value
        grid: Number of grid cells (at least 256)

    Returns:
        The minimum
    """
    if grid < 256:
        raise ValueError("expansion grids need at least 256 points")
    x = uniform_grid(grid)
    values = np.abs(circle_map.dx(eps, x))
    best = int(np.argmin(values))
    coarse = float(values[best])

    cell = 1.0 / grid
    result = minimize_scalar(
        lambda t: float(np.abs(circle_map.dx(eps, np.array([t])))[0]),
        bounds=(x[best] - cell, x[best] + cell),
        method="bounded",
        options={"xatol": 1e-10},
    )
    return min(coarse, float(result.fun))


def derivative_bound(circle_map: ParamCircleMap, eps: float, order: Optional[int] = None, grid: int = 1024) -> float:
    """
    Grid surrogate for the C^order norm: max over 1 <= i <= order of sup |T^(i)|.

    ``order`` defaults to the map's smoothness order.
    """
    top = circle_map.smoothness_order if order is None else order
    if not 1 <= top <= circle_map.smoothness_order:
        raise ValueError(f"order {top} outside 1..{circle_map.smoothness_order}")
    x = uniform_grid(grid)
    return max(float(np.max(np.abs(circle_map.derivative(i, eps, x)))) for i in range(1, top + 1))


def lambda_lower_bound(circle_map: ParamCircleMap, eps_grid: Sequence[float], grid: int = 1024) -> float:
    """
    eps-uniform expansion surrogate: min over the configured eps-grid of min |T'|.

    This is a finite-sample stand-in for a bound valid on the whole eps-range.
    """
    if len(eps_grid) == 0:
        raise ValueError("eps_grid must not be empty")
    return min(min_expansion(circle_map, float(eps), grid) for eps in eps_grid)


def expansion_report(
    orbit: DrivingOrbit,
    eps: float,
    grid: int = 1024,
    fibers: Optional[Sequence[int]] = None,
    eps_grid: Optional[Sequence[float]] = None,
) -> ExpansionReport:
    """
    Per-fiber expansion and derivative bounds over the window.

    Args:
        orbit: Driving window
        eps: Parameter value
        grid: Grid size (at least 256)
        fibers: Fibers to inspect (default: the whole window)
        eps_grid: Optional eps-grid for the per-fiber lower bound

    Returns:
        ExpansionReport

    Raises:
        DegenerateMapError: If any fiber has min |T'| <= 1e-8
    """
    indices = tuple(range(orbit.lo, orbit.hi + 1)) if fibers is None else tuple(fibers)

    # Fibers sharing a symbol share a map
    per_symbol: Dict[str, Tuple[float, float, float]] = {}
    for n in indices:
        symbol = orbit.symbol(n)
        if symbol in per_symbol:
            continue
        circle_map = orbit.registry[symbol]
        lam = min_expansion(circle_map, eps, grid)
        if lam <= DEGENERATE_LAMBDA:
            raise DegenerateMapError(f"fiber {n} ({circle_map.name}) has min|T'| = {lam:.3e} at eps={eps}")
        lower = lam if eps_grid is None else min(lam, lambda_lower_bound(circle_map, eps_grid, grid))
        per_symbol[symbol] = (lam, derivative_bound(circle_map, eps, grid=grid), lower)

    lambdas = tuple(per_symbol[orbit.symbol(n)][0] for n in indices)
    report = ExpansionReport(
        fibers=indices,
        lambda_min_per_fiber=lambdas,
        mean_log_lambda=float(np.mean(np.log(lambdas))),
        K_per_fiber=tuple(per_symbol[orbit.symbol(n)][1] for n in indices),
        lambda_lower_per_fiber=tuple(per_symbol[orbit.symbol(n)][2] for n in indices),
    )

    if report.expanding:
        logger.info(f"Window expands on average: mean log lambda = {report.mean_log_lambda:.6f}")
    else:
        logger.warning(f"Window is not expanding on average: mean log lambda = {report.mean_log_lambda:.6f}")
    return report


def covering_time(
    orbit: DrivingOrbit,
    eps: float,
    interval: Tuple[float, float],
    start: int = 0,
    n_max: int = 64,
) -> CoveringTime:
    """
    Least n such that T^n_{start}(J) covers the circle.

    Endpoints of the lifted arc are pushed through the fiber lifts; after each
    step the integer part of the left endpoint is removed. All fibers must be
    increasing on lifts.

    Args:
        orbit: Driving window
        eps: Parameter value
        interval: Arc J = (a, b) with a < b, read on the lift
        start: Fiber the arc starts on
        n_max: Cap on the number of steps (also cut at the window end)

    Returns:
        CoveringTime; ``covered`` is False when the cap or window end is reached
    """
    a, b = float(interval[0]), float(interval[1])
    if not b > a:
        raise ValueError(f"arc {interval} is degenerate")
    if b - a >= 1.0 - _COVER_TOL:
        return CoveringTime(steps=0, covered=True)

    last = min(n_max, orbit.hi - start + 1)
    for n in range(1, last + 1):
        lift = orbit.fiber(start + n - 1).lift
        a, b = float(lift(eps, np.array([a]))[0]), float(lift(eps, np.array([b]))[0])
        if b - a >= 1.0 - _COVER_TOL:
            return CoveringTime(steps=n, covered=True)
        shift = np.floor(a)
        a, b = a - shift, b - shift

    logger.warning(f"Arc {interval} not covering after {last} steps from fiber {start}")
    return CoveringTime(steps=last, covered=False)
