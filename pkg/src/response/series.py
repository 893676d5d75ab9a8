"""The response series of the equivariant densities."""

from dataclasses import dataclass
from typing import Iterator, List, Mapping, Optional, Tuple

import numpy as np

from ..density import DEFAULT_TOL, DensityResult, densities_along
from ..dynamics import DrivingOrbit, WindowError
from ..operators import TransferCache, apply_adjoint, fiber_matrix, push_forward
from ..spectral import FourierFunction, sobolev_norm
from ..utils import get_logger, linear_fit
from .derivative_operator import derivative_operator

logger = get_logger(__name__)

# Auto-depth stops after the first term below this W^{1,1} norm
AUTO_DEPTH_TOL = 1e-12


@dataclass(frozen=True)
class ResponseResult:
    """
    Partial sum of the response series on one fiber.

    Attributes:
        h_hat: sum_{n<=N} L^n_{sigma^{-n} omega} Lhat_{sigma^{-n-1} omega} h_{sigma^{-n-1} omega}
        series_depth: Last retained index N
        tail_estimate: Norm of the last term / (1 - fitted decay factor)
        observable_response: ∫ phi h_hat dm, or None without an observable
        term_norms: W^{1,1} norm of every retained term
        fiber: Fiber index omega
    """

    h_hat: FourierFunction
    series_depth: int
    tail_estimate: float
    observable_response: Optional[float]
    term_norms: Tuple[float, ...]
    fiber: int


def _unperturbed_densities(
    orbit: DrivingOrbit,
    fiber: int,
    depth: int,
    densities: Optional[Mapping[int, DensityResult]],
    modes: int,
    quadrature: Optional[int],
    tol: float,
    cache: Optional[TransferCache],
) -> Mapping[int, DensityResult]:
    """eps = 0 densities on fibers fiber-depth-1 .. fiber-1."""
    first = fiber - depth - 1
    if first <= orbit.lo:
        raise WindowError(
            f"response series of depth {depth} on fiber {fiber} needs fibers before {first} "
            f"(window starts at {orbit.lo})"
        )
    if densities is not None:
        missing = [n for n in range(first, fiber) if n not in densities]
        if missing:
            raise ValueError(f"no density supplied for fiber(s) {missing}")
        return densities
    return densities_along(orbit, 0.0, first, fiber - 1, tol=tol, modes=modes, quadrature=quadrature, cache=cache)


def _source(
    orbit: DrivingOrbit,
    n: int,
    density: DensityResult,
    modes: int,
    quadrature: Optional[int],
    cache: Optional[TransferCache],
) -> FourierFunction:
    """Lhat_n h_n, living on fiber n + 1."""
    matrix = fiber_matrix(orbit, 0.0, n, modes, quadrature, cache)
    return derivative_operator(orbit.fiber(n), density.h.resize(modes), matrix, quadrature)


def _series_terms(
    orbit: DrivingOrbit,
    fiber: int,
    depth: int,
    densities: Mapping[int, DensityResult],
    modes: int,
    quadrature: Optional[int],
    cache: Optional[TransferCache],
) -> Iterator[FourierFunction]:
    """Yield the series terms for n = 0..depth."""
    for n in range(depth + 1):
        source = _source(orbit, fiber - n - 1, densities[fiber - n - 1], modes, quadrature, cache)
        yield push_forward(orbit, 0.0, source, fiber - n, n, quadrature, cache)


def _tail_estimate(norms: List[float]) -> float:
    last = norms[-1]
    if last == 0.0:
        return 0.0
    positive = [(n, v) for n, v in enumerate(norms) if v > 0.0]
    if len(positive) < 2:
        return last
    recent = positive[-max(2, len(positive) // 2):]
    fit = linear_fit([n for n, _ in recent], [np.log(v) for _, v in recent])
    rho = float(np.exp(fit.slope))
    if rho >= 1.0:
        logger.warning(f"Response terms do not decay (fitted factor {rho:.4g})")
        return float("inf")
    return last / (1.0 - rho)


def response_series(
    orbit: DrivingOrbit,
    fiber: int,
    depth: Optional[int] = None,
    densities: Optional[Mapping[int, DensityResult]] = None,
    observable: Optional[FourierFunction] = None,
    modes: int = 32,
    quadrature: Optional[int] = None,
    tol: float = DEFAULT_TOL,
    max_depth: int = 64,
    cache: Optional[TransferCache] = None,
) -> ResponseResult:
    """
    Linear response h_hat_omega of the equivariant density on ``fiber``.

    Terms are summed in pullback order n = 0, 1, ... With ``depth=None`` the
    series stops after the first term whose W^{1,1} norm is below 1e-12, or
    at ``max_depth``.

    Args:
        orbit: Driving window
        fiber: Fiber omega
        depth: Last index N (default: automatic)
        densities: eps = 0 densities by fiber (computed when omitted)
        observable: phi for the observable response
        modes: Truncation order M
        quadrature: Grid size Q
        tol: Density tolerance when densities are computed here
        max_depth: Cap for the automatic depth
        cache: Matrix cache

    Returns:
        ResponseResult

    Raises:
        WindowError: If the window holds fewer than N + 2 fibers before ``fiber``
    """
    cap = depth if depth is not None else min(max_depth, fiber - orbit.lo - 2)
    if cap < 0:
        raise WindowError(f"no room for a response series on fiber {fiber} in [{orbit.lo}, {orbit.hi}]")
    table = _unperturbed_densities(orbit, fiber, cap, densities, modes, quadrature, tol, cache)

    total = FourierFunction.zeros(modes)
    norms: List[float] = []
    for term in _series_terms(orbit, fiber, cap, table, modes, quadrature, cache):
        total = total + term
        norms.append(sobolev_norm(term, 1, quadrature))
        logger.debug(f"response term {len(norms) - 1} on fiber {fiber}: {norms[-1]:.3e}")
        if depth is None and norms[-1] < AUTO_DEPTH_TOL:
            break

    h_hat = total.with_mean(0.0)
    tail = _tail_estimate(norms)
    value = observable.resize(modes).inner(h_hat) if observable is not None else None
    logger.info(f"Response on fiber {fiber}: depth {len(norms) - 1}, tail {tail:.3e}")
    return ResponseResult(
        h_hat=h_hat,
        series_depth=len(norms) - 1,
        tail_estimate=tail,
        observable_response=value,
        term_norms=tuple(norms),
        fiber=fiber,
    )


def koopman_observable_response(
    orbit: DrivingOrbit,
    fiber: int,
    observable: FourierFunction,
    depth: int,
    densities: Optional[Mapping[int, DensityResult]] = None,
    modes: int = 32,
    quadrature: Optional[int] = None,
    tol: float = DEFAULT_TOL,
    cache: Optional[TransferCache] = None,
) -> float:
    """
    sum_{n<=N} ∫ phi o T^n_{sigma^{-n} omega} * Lhat h dm, by pulling phi back.

    The pulled-back observables satisfy phi_n = A_{fiber-n}^H phi_{n-1}.
    """
    table = _unperturbed_densities(orbit, fiber, depth, densities, modes, quadrature, tol, cache)
    pulled = observable.resize(modes)
    total = 0.0
    for n in range(depth + 1):
        if n > 0:
            pulled = apply_adjoint(fiber_matrix(orbit, 0.0, fiber - n, modes, quadrature, cache), pulled)
        source = _source(orbit, fiber - n - 1, table[fiber - n - 1], modes, quadrature, cache)
        total += pulled.inner(source)
    return total

