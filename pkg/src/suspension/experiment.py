"""Quenched response per sample and the divergence of its annealed average."""

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import zeta

from ..dynamics import DrivingOrbit, ParamCircleMap, builtin_family
from ..operators import TransferCache, iterate_forward
from ..response import derivative_operator
from ..spectral import FourierFunction
from ..utils import get_logger, linear_fit, log_log_fit
from .observable import PsiObservable, make_psi
from .sampling import DOUBLING_SYMBOL, IDENTITY_SYMBOL, SuspensionState, sample_heights

logger = get_logger(__name__)

ROUTES = ("closed_form", "operator")

# Extra series terms the operator route keeps beyond the covering time
_DEPTH_MARGIN = 5

TABLE_COLUMNS = ("sample_size", "cap", "truncated_mean", "fitted_slope", "max_sample", "exact_mean")


@dataclass(frozen=True)
class QuenchedResponse:
    """
    ∫ psi h_hat_{(omega, i)} dm for one suspension state.

    Attributes:
        value: The response (the integer n_c on the closed-form route)
        route: closed_form or operator
        depth: Last correlation index summed (operator route)
        truncated: The operator route stopped before the covering time
    """

    value: float
    route: str
    depth: int
    truncated: bool = False


@dataclass(frozen=True)
class GrowthComparison:
    """R² of mean ≈ a log N + b against log mean ≈ p log N + c."""

    log_r_squared: float
    power_r_squared: float
    power_slope: float

    @property
    def preferred(self) -> str:
        return "log" if self.log_r_squared > self.power_r_squared else "power"


@dataclass(frozen=True)
class AnnealedTable:
    """
    Truncated annealed means over a grid of sample sizes and caps.

    Attributes:
        delta: Tail exponent
        rows: One dict per (sample_size, cap) with the TABLE_COLUMNS keys
        slopes: Log-log slope of truncated mean against cap, per sample size
        comparison: Growth model comparison at the largest sample size
        tail_law: Empirical against exact P(n_c = N) at the largest sample size
    """

    delta: float
    rows: Tuple[Dict[str, float], ...]
    slopes: Dict[int, float]
    comparison: GrowthComparison
    tail_law: Tuple[Dict[str, float], ...] = ()


@lru_cache(maxsize=8)
def _appendix_cocycle(
    modes: int,
    interval: Tuple[float, float],
    antiperiodic: bool,
) -> Tuple[Dict[str, ParamCircleMap], PsiObservable]:
    """Identity and doubling fibers, both perturbed by D_eps built from psi."""
    psi = make_psi(interval, modes, antiperiodic)
    sup_psi = float(np.max(np.abs(psi.profile.grid_values())))
    params = {"modes": modes, "psi": psi.profile, "eps_max": 0.5 / sup_psi}
    registry = {
        IDENTITY_SYMBOL: builtin_family("doubling_composed", {**params, "beta": 1}),
        DOUBLING_SYMBOL: builtin_family("doubling_composed", {**params, "beta": 2}),
    }
    return registry, psi


def appendix_orbit(
    state: SuspensionState,
    steps: int,
    modes: int = 64,
    interval: Tuple[float, float] = (0.55, 0.75),
    antiperiodic: bool = True,
) -> DrivingOrbit:
    """Forward window of ``steps`` fibers from ``state``, starting at fiber 0."""
    registry, _ = _appendix_cocycle(modes, tuple(interval), antiperiodic)
    return DrivingOrbit(
        symbols=state.forward_symbols(steps),
        registry=registry,
        first_index=0,
        seed=state.seed,
        family="suspension",
        params={"delta": state.delta},
    )


def quenched_response_value(
    state: SuspensionState,
    route: str = "closed_form",
    modes: int = 64,
    quadrature: Optional[int] = None,
    depth: Optional[int] = None,
    interval: Tuple[float, float] = (0.55, 0.75),
    cache: Optional[TransferCache] = None,
) -> QuenchedResponse:
    """
    Quenched response ∫ psi h_hat dm of one state.

    The closed form is the covering time omega0 - i. The operator route sums
    ∫ psi * L^n (Lhat 1) dm for n = 0..N along the forward fibers, where
    h ≡ 1 is equivariant and Lhat 1 = psi.

    Args:
        state: Suspension state
        route: closed_form or operator
        modes: Truncation order M
        quadrature: Grid size Q
        depth: Last correlation index N (default n_c + 5)
        interval: Arc of the observable
        cache: Matrix cache

    Returns:
        QuenchedResponse (flagged truncated when N < n_c)
    """
    if route not in ROUTES:
        raise ValueError(f"unknown route '{route}' (expected one of {', '.join(ROUTES)})")
    n_c = state.covering_time
    if route == "closed_form":
        return QuenchedResponse(value=float(n_c), route=route, depth=n_c - 1)

    last = n_c + _DEPTH_MARGIN if depth is None else int(depth)
    orbit = appendix_orbit(state, last + 1, modes, interval)
    registry, psi_obs = _appendix_cocycle(modes, tuple(interval), True)
    psi = psi_obs.profile

    # Lhat 1 = psi on both fiber types; the identity fiber keeps every mode of psi
    source = derivative_operator(registry[IDENTITY_SYMBOL], FourierFunction.constant(1.0, modes), quadrature=quadrature)
    value = psi.inner(source)
    for image in iterate_forward(orbit, 0.0, source, 0, last, quadrature, cache):
        value += psi.inner(image)

    truncated = last < n_c
    if truncated:
        logger.warning(f"Operator route truncated at N={last} < n_c={n_c}")
    return QuenchedResponse(value=float(value), route=route, depth=last, truncated=truncated)


def covering_time_law(delta: float, n):
    """Exact P(n_c = N) = zeta(2+delta, N) / zeta(1+delta)."""
    return zeta(2.0 + delta, np.asarray(n, dtype=float)) / zeta(1.0 + delta)


def exact_truncated_mean(delta: float, cap: int) -> float:
    """
    E min(n_c, N) = sum_{m<=N} P(n_c >= m).

    P(n_c >= m) = (zeta(1+delta, m) - (m-1) zeta(2+delta, m)) / zeta(1+delta).
    """
    m = np.arange(1, int(cap) + 1, dtype=float)
    survival = (zeta(1.0 + delta, m) - (m - 1.0) * zeta(2.0 + delta, m)) / zeta(1.0 + delta)
    return float(np.sum(survival))


def _tail_law(delta: float, covering: np.ndarray, tail_max: int) -> Tuple[Dict[str, float], ...]:
    """Empirical P(n_c = N) with its binomial standard error, against the exact law."""
    size = covering.size
    counts = np.bincount(np.minimum(covering, tail_max + 1), minlength=tail_max + 2)
    rows = []
    for n in range(1, tail_max + 1):
        exact = float(covering_time_law(delta, n))
        rows.append(
            {
                "N": n,
                "empirical": counts[n] / size,
                "exact": exact,
                "sigma": float(np.sqrt(exact * (1.0 - exact) / size)),
            }
        )
    return tuple(rows)


def compare_growth_models(caps: Sequence[float], means: Sequence[float]) -> GrowthComparison:
    """Fit truncated means against log N and against N^p."""
    log_fit = linear_fit(np.log(np.asarray(caps, dtype=float)), means)
    power_fit = log_log_fit(caps, means)
    return GrowthComparison(
        log_r_squared=log_fit.r_squared,
        power_r_squared=power_fit.r_squared,
        power_slope=power_fit.slope,
    )


def annealed_divergence_experiment(
    seed: int,
    delta: float,
    sample_sizes: Sequence[int],
    caps: Sequence[int],
    threads: int = 1,
    tail_max: int = 50,
) -> AnnealedTable:
    """
    Truncated means of the quenched response over nested sample prefixes.

    One stream of max(sample_sizes) draws is sampled; each sample size uses
    its prefix. For every sample size the mean of min(n_c, N) is tabulated
    over the caps N and fitted against N on log-log axes.

    Args:
        seed: Master seed
        delta: Tail exponent in (0, 1]
        sample_sizes: Increasing sample sizes
        caps: Increasing caps N (at least two)
        threads: Worker threads for sampling
        tail_max: Largest N of the tail-law comparison

    Returns:
        AnnealedTable
    """
    sizes = [int(s) for s in sample_sizes]
    cap_list = [int(c) for c in caps]
    if not sizes or any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError("sample_sizes must be a non-empty increasing sequence")
    if len(cap_list) < 2 or any(b <= a for a, b in zip(cap_list, cap_list[1:])):
        raise ValueError("caps must be an increasing sequence of at least two values")

    roofs, heights = sample_heights(seed, delta, sizes[-1], threads)
    covering = roofs - heights
    exact = {cap: exact_truncated_mean(delta, cap) for cap in cap_list}

    rows: List[Dict[str, float]] = []
    slopes: Dict[int, float] = {}
    means_at_largest: List[float] = []
    for size in sizes:
        prefix = covering[:size]
        means = [float(np.mean(np.minimum(prefix, cap))) for cap in cap_list]
        slopes[size] = log_log_fit(cap_list, means).slope
        for cap, mean in zip(cap_list, means):
            rows.append(
                {
                    "sample_size": size,
                    "cap": cap,
                    "truncated_mean": mean,
                    "fitted_slope": slopes[size],
                    "max_sample": int(prefix.max()),
                    "exact_mean": exact[cap],
                }
            )
        means_at_largest = means

    comparison = compare_growth_models(cap_list, means_at_largest)
    tail = _tail_law(delta, covering, tail_max)
    logger.info(
        f"delta={delta}: truncated-mean slope {slopes[sizes[-1]]:.4f} at S={sizes[-1]} "
        f"(expected {1.0 - delta:.4f}), preferred model {comparison.preferred}"
    )
    return AnnealedTable(delta=delta, rows=tuple(rows), slopes=slopes, comparison=comparison, tail_law=tail)
