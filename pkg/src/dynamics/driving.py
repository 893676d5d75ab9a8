"""Finite two-sided windows of random driving orbits."""

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import null_space

from ..utils import get_logger
from .circle_map import ParamCircleMap

logger = get_logger(__name__)

# Tolerance for probability vectors and stochastic rows
_PROBABILITY_TOL = 1e-12

DRIVING_FAMILIES = ("iid", "markov", "fixed")


class WindowError(ValueError):
    """Raised when a fiber index falls outside the sampled window."""


@dataclass(frozen=True, eq=False)
class DrivingOrbit:
    """
    Symbols of a base orbit on the fibers first_index, ..., first_index + len - 1.

    Attributes:
        symbols: Registry symbol of every fiber in the window
        registry: Symbol -> ParamCircleMap
        first_index: Fiber index of ``symbols[0]`` (-N for a fresh window)
        seed: Seed the symbols were drawn with
        family: Driving construction tag (iid, markov, fixed)
        params: Parameters of the driving law
    """

    symbols: Tuple[str, ...]
    registry: Mapping[str, ParamCircleMap]
    first_index: int
    seed: int = 0
    family: str = "fixed"
    params: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        missing = sorted(set(self.symbols) - set(self.registry))
        if missing:
            raise ValueError(f"symbols without a registered map: {', '.join(missing)}")
        object.__setattr__(self, "registry", MappingProxyType(dict(self.registry)))

    @property
    def lo(self) -> int:
        return self.first_index

    @property
    def hi(self) -> int:
        return self.first_index + len(self.symbols) - 1

    @property
    def window(self) -> int:
        """Half-width N of the window."""
        return (len(self.symbols) - 1) // 2

    def symbol(self, n: int) -> str:
        if not self.lo <= n <= self.hi:
            raise WindowError(f"fiber {n} outside the window [{self.lo}, {self.hi}]")
        return self.symbols[n - self.first_index]

    def fiber(self, n: int) -> ParamCircleMap:
        """Map of fiber n."""
        return self.registry[self.symbol(n)]

    def shifted(self, k: int) -> "DrivingOrbit":
        """Window of sigma^k omega: fiber(n) of the result is fiber(n + k) of self."""
        return DrivingOrbit(
            symbols=self.symbols,
            registry=self.registry,
            first_index=self.first_index - k,
            seed=self.seed,
            family=self.family,
            params=self.params,
        )

    def frequency(self, symbol: str) -> float:
        """Empirical frequency of a symbol over the window."""
        return self.symbols.count(symbol) / len(self.symbols)


def _probability_vector(values: Sequence[float], label: str) -> np.ndarray:
    p = np.asarray(values, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise ValueError(f"{label} must be a non-empty vector")
    if np.any(p < 0.0):
        raise ValueError(f"{label} has negative entries")
    if abs(float(p.sum()) - 1.0) > _PROBABILITY_TOL:
        raise ValueError(f"{label} sums to {float(p.sum())!r}, not 1 within {_PROBABILITY_TOL}")
    return p


def stationary_distribution(transition: np.ndarray) -> np.ndarray:
    """
    Stationary vector pi = pi P of a stochastic matrix.

    Raises:
        ValueError: If the matrix is not square-stochastic or pi is not unique
    """
    P = np.asarray(transition, dtype=float)
    if P.ndim != 2 or P.shape[0] != P.shape[1]:
        raise ValueError("transition matrix must be square")
    for row, values in enumerate(P):
        _probability_vector(values, f"transition row {row}")

    kernel = null_space(P.T - np.eye(P.shape[0]))
    if kernel.shape[1] != 1:
        raise ValueError(f"transition matrix has {kernel.shape[1]} stationary directions; expected exactly one")
    pi = np.abs(kernel[:, 0])
    return pi / pi.sum()


def sample_orbit(
    family: str,
    seed: int,
    window: int,
    params: Mapping[str, Any],
    registry: Mapping[str, ParamCircleMap],
) -> DrivingOrbit:
    """
    Draw the symbols of fibers -N..N.

    Args:
        family: ``iid`` (alphabet + probabilities), ``markov`` (alphabet +
            transition matrix, started from its stationary law) or ``fixed``
            (periodic ``sequence`` with fiber 0 at its first entry)
        seed: Seed of the driving law
        window: Half-width N
        params: Family parameters
        registry: Symbol -> map

    Returns:
        DrivingOrbit of length 2N+1; a deterministic function of (seed, N, params)

    Raises:
        ValueError: Unknown family, malformed law, or unregistered symbols
    """
    if window < 0:
        raise ValueError("window must be non-negative")
    length = 2 * window + 1
    rng = np.random.default_rng(seed)

    if family == "fixed":
        sequence = [str(s) for s in params.get("sequence", ())]
        if not sequence:
            raise ValueError("fixed driving needs a non-empty 'sequence'")
        symbols = tuple(sequence[n % len(sequence)] for n in range(-window, window + 1))

    elif family == "iid":
        alphabet = [str(s) for s in params["alphabet"]]
        p = _probability_vector(params.get("probabilities", [1.0 / len(alphabet)] * len(alphabet)), "probabilities")
        if p.size != len(alphabet):
            raise ValueError("probabilities and alphabet differ in length")
        draws = rng.choice(len(alphabet), size=length, p=p)
        symbols = tuple(alphabet[i] for i in draws)

    elif family == "markov":
        alphabet = [str(s) for s in params["alphabet"]]
        P = np.asarray(params["transition"], dtype=float)
        if P.shape != (len(alphabet), len(alphabet)):
            raise ValueError("transition matrix shape does not match the alphabet")
        pi = stationary_distribution(P)
        cumulative = np.cumsum(P, axis=1)
        uniforms = rng.random(length)
        state = int(np.searchsorted(np.cumsum(pi), uniforms[0], side="right"))
        states = [min(state, len(alphabet) - 1)]
        for u in uniforms[1:]:
            state = int(np.searchsorted(cumulative[states[-1]], u, side="right"))
            states.append(min(state, len(alphabet) - 1))
        symbols = tuple(alphabet[i] for i in states)

    else:
        raise ValueError(f"unknown driving family '{family}' (known: {', '.join(DRIVING_FAMILIES)})")

    logger.debug(f"Sampled {family} orbit of {length} fibers (seed={seed})")
    return DrivingOrbit(
        symbols=symbols,
        registry=registry,
        first_index=-window,
        seed=seed,
        family=family,
        params=dict(params),
    )


def constant_orbit(circle_map: ParamCircleMap, window: int, symbol: Optional[str] = None) -> DrivingOrbit:
    """Orbit whose every fiber is the same map."""
    tag = symbol or "T"
    return DrivingOrbit(
        symbols=(tag,) * (2 * window + 1),
        registry={tag: circle_map},
        first_index=-window,
        family="fixed",
        params={"sequence": [tag]},
    )
