"""Equivariant densities by pullback iteration."""

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from ..dynamics import DrivingOrbit, WindowError
from ..operators import TransferCache, apply, fiber_matrix, iterate_pullback
from ..spectral import FourierFunction, sobolev_norm
from ..utils import get_logger

logger = get_logger(__name__)

# Default W^{1,1} tolerance on successive pullback iterates
DEFAULT_TOL = 1e-9

# Densities dipping below this on the grid fail the positivity surrogate
POSITIVITY_FLOOR = -1e-6


@dataclass(frozen=True)
class DensityResult:
    """
    Equivariant density of one fiber.

    Attributes:
        h: Density with mean 1
        fiber_index: Fiber the density lives on
        eps: Parameter value
        pullback_depth: Number of pullback steps n
        cauchy_defect: ||h_n - h_{n-1}||_{W^{1,1}} at the last step
        converged: Whether the defect fell below the tolerance
        defects: Defect after every pullback step
        pullback_norms: ||L^n 1||_{W^{ell_check,1}} along the pullback
        min_value: Minimum of h on the quadrature grid
        ell_check: Sobolev order of ``pullback_norms``
    """

    h: FourierFunction
    fiber_index: int
    eps: float
    pullback_depth: int
    cauchy_defect: float
    converged: bool
    defects: Tuple[float, ...] = ()
    pullback_norms: Tuple[float, ...] = ()
    min_value: float = 1.0
    ell_check: int = 1

    @property
    def positive(self) -> bool:
        return self.min_value > POSITIVITY_FLOOR


def equivariant_density(
    orbit: DrivingOrbit,
    eps: float,
    fiber: int,
    ell_check: int = 1,
    tol: float = DEFAULT_TOL,
    modes: int = 32,
    quadrature: Optional[int] = None,
    initial: Optional[FourierFunction] = None,
    max_depth: Optional[int] = None,
    cache: Optional[TransferCache] = None,
) -> DensityResult:
    """
    h = lim_n L^n_{sigma^{-n} omega} 1 on the given fiber.

    The iterate is renormalized to mean 1 after every step. Iteration stops
    when the W^{1,1} Cauchy defect drops below ``tol``; running out of window
    returns a result flagged as not converged.

    Args:
        orbit: Driving window
        eps: Parameter value
        fiber: Target fiber
        ell_check: Sobolev order for the recorded pullback norms
        tol: Defect tolerance
        modes: Truncation order M
        quadrature: Grid size Q
        initial: Starting density (default the constant 1)
        max_depth: Cap on pullback steps (default: the whole backward window)
        cache: Matrix cache

    Returns:
        DensityResult
    """
    start = initial.resize(modes) if initial is not None else FourierFunction.constant(1.0, modes)
    if abs(start.mean) <= 1e-300:
        raise ValueError("initial density must have nonzero mass")
    start = start / start.mean

    available = fiber - orbit.lo
    if available < 1:
        raise WindowError(f"no fibers before {fiber} in the window [{orbit.lo}, {orbit.hi}]")
    depth_cap = available if max_depth is None else min(max_depth, available)

    previous = start
    defects = []
    norms = [sobolev_norm(start, ell_check, quadrature)]
    for depth, product in enumerate(iterate_pullback(orbit, eps, fiber, depth_cap, modes, quadrature, cache), 1):
        current = apply(product, start).with_mean(1.0)
        defect = sobolev_norm(current - previous, 1, quadrature)
        defects.append(defect)
        norms.append(sobolev_norm(current, ell_check, quadrature))
        logger.debug(f"fiber {fiber}, eps={eps}: pullback {depth} defect {defect:.3e}")
        previous = current
        if defect < tol:
            break

    converged = bool(defects) and defects[-1] < tol
    min_value = float(np.min(previous.grid_values(quadrature)))
    if not converged:
        logger.warning(
            f"Density on fiber {fiber} (eps={eps}) not converged after {len(defects)} steps "
            f"(defect {defects[-1]:.3e} > tol {tol:.1e})"
        )
    if min_value <= POSITIVITY_FLOOR:
        logger.warning(f"Density on fiber {fiber} (eps={eps}) dips to {min_value:.3e}")

    return DensityResult(
        h=previous,
        fiber_index=fiber,
        eps=float(eps),
        pullback_depth=len(defects),
        cauchy_defect=defects[-1],
        converged=converged,
        defects=tuple(defects),
        pullback_norms=tuple(norms),
        min_value=min_value,
        ell_check=ell_check,
    )


def equivariance_residual(
    orbit: DrivingOrbit,
    eps: float,
    fiber: int,
    h_prev: DensityResult,
    h_next: DensityResult,
    quadrature: Optional[int] = None,
    cache: Optional[TransferCache] = None,
) -> float:
    """||L_{fiber} h_prev - h_next||_{W^{1,1}} for consecutive fibers."""
    if h_next.fiber_index != h_prev.fiber_index + 1 or h_prev.fiber_index != fiber:
        raise ValueError(
            f"densities on fibers {h_prev.fiber_index}, {h_next.fiber_index} are not consecutive from {fiber}"
        )
    matrix = fiber_matrix(orbit, eps, fiber, h_prev.h.modes, quadrature, cache)
    return sobolev_norm(apply(matrix, h_prev.h) - h_next.h, 1, quadrature)


def densities_along(
    orbit: DrivingOrbit,
    eps: float,
    first: int,
    last: int,
    tol: float = DEFAULT_TOL,
    modes: int = 32,
    quadrature: Optional[int] = None,
    cache: Optional[TransferCache] = None,
) -> Dict[int, DensityResult]:
    """
    Densities on fibers first..last: pullback on ``first``, then h_{n+1} = L_n h_n.

    Forward iterates inherit the convergence record of the pullback.
    """
    if last < first:
        raise ValueError("last fiber precedes first fiber")
    base = equivariant_density(orbit, eps, first, tol=tol, modes=modes, quadrature=quadrature, cache=cache)
    results = {first: base}
    current = base.h
    for n in range(first, last):
        current = apply(fiber_matrix(orbit, eps, n, modes, quadrature, cache), current).with_mean(1.0)
        results[n + 1] = DensityResult(
            h=current,
            fiber_index=n + 1,
            eps=float(eps),
            pullback_depth=base.pullback_depth + (n + 1 - first),
            cauchy_defect=base.cauchy_defect,
            converged=base.converged,
            min_value=float(np.min(current.grid_values(quadrature))),
        )
    return results
