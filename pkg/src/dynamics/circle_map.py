"""Parameterized circle maps with closed-form derivatives."""

from dataclasses import dataclass, field
from typing import Any, Callable, Mapping, Optional, Tuple

import numpy as np

from ..utils import get_logger

logger = get_logger(__name__)

# (eps, x) -> values, vectorized over x
MapCallable = Callable[[float, np.ndarray], np.ndarray]

# Periodicity residual tolerated for lift(eps, x+1) - lift(eps, x) - degree
_PERIODICITY_TOL = 1e-10


def _central(func: Callable[[Any], np.ndarray], at: Any, step: float) -> np.ndarray:
    """Five-point central difference of ``func`` at ``at``."""
    return (
        -func(at + 2 * step) + 8 * func(at + step) - 8 * func(at - step) + func(at - 2 * step)
    ) / (12 * step)


class ConsistencyError(ValueError):
    """Raised when analytic derivatives disagree with finite differences."""


class DegenerateMapError(ValueError):
    """Raised when a map has (numerically) vanishing derivative."""


@dataclass(frozen=True, eq=False)
class ParamCircleMap:
    """
    A degree-d circle map family T(eps, x) given through its lift.

    Attributes:
        name: Family tag plus parameters, used in logs and cache keys
        degree: Topological degree d of x -> T(eps, x)
        lift: T(eps, x) with lift(eps, x+1) = lift(eps, x) + d
        x_derivatives: Callables for the x-derivatives of orders 1..r
        de: d/deps T, or None for families without a perturbation
        dee: d²/deps² T
        dedx: d²/deps dx T
        eps_range: Admissible closed parameter interval
        params: Resolved family parameters
        metadata: Family-specific extras (e.g. the observable of a composed map)
    """

    name: str
    degree: int
    lift: MapCallable
    x_derivatives: Tuple[MapCallable, ...]
    de: Optional[MapCallable] = None
    dee: Optional[MapCallable] = None
    dedx: Optional[MapCallable] = None
    eps_range: Tuple[float, float] = (0.0, 0.0)
    params: Mapping[str, Any] = field(default_factory=dict)
    metadata: Mapping[str, Any] = field(default_factory=dict)

    @property
    def smoothness_order(self) -> int:
        return len(self.x_derivatives)

    @property
    def has_eps_derivatives(self) -> bool:
        return self.de is not None and self.dee is not None and self.dedx is not None

    def derivative(self, order: int, eps: float, x: np.ndarray) -> np.ndarray:
        """x-derivative of the given order (0 returns the lift)."""
        if order == 0:
            return self.lift(eps, x)
        if not 1 <= order <= self.smoothness_order:
            raise ValueError(f"{self.name}: derivative of order {order} exceeds r={self.smoothness_order}")
        return self.x_derivatives[order - 1](eps, x)

    def dx(self, eps: float, x: np.ndarray) -> np.ndarray:
        return self.derivative(1, eps, x)

    def dxx(self, eps: float, x: np.ndarray) -> np.ndarray:
        return self.derivative(2, eps, x)

    def dxxx(self, eps: float, x: np.ndarray) -> np.ndarray:
        return self.derivative(3, eps, x)

    def dx4(self, eps: float, x: np.ndarray) -> np.ndarray:
        return self.derivative(4, eps, x)

    def admits(self, eps: float) -> bool:
        lo, hi = self.eps_range
        return lo - 1e-15 <= eps <= hi + 1e-15

    def check_consistency(
        self,
        points: int = 64,
        step: float = 1e-5,
        rtol: float = 1e-6,
        seed: int = 0,
    ) -> None:
        """
        Cross-check every derivative callable against central differences.

        Args:
            points: Number of random (eps, x) sample points
            step: Finite-difference step
            rtol: Tolerance relative to 1 + max |analytic value|
            seed: Seed for the sample points

        Raises:
            ConsistencyError: On the first mismatch or a periodicity defect
        """
        rng = np.random.default_rng(seed)
        lo, hi = self.eps_range
        eps_samples = rng.uniform(lo, hi, size=points) if hi > lo else np.full(points, lo)
        x = rng.uniform(0.0, 1.0, size=points)

        def compare(label: str, analytic: np.ndarray, numeric: np.ndarray) -> None:
            scale = 1.0 + float(np.max(np.abs(analytic)))
            mismatch = float(np.max(np.abs(analytic - numeric)))
            if mismatch > rtol * scale:
                raise ConsistencyError(
                    f"{self.name}: {label} disagrees with finite differences "
                    f"(max mismatch {mismatch:.3e}, allowed {rtol * scale:.3e})"
                )

        for eps, point in zip(eps_samples, x):
            pts = np.array([point])
            for order in range(1, self.smoothness_order + 1):
                numeric = _central(lambda y: self.derivative(order - 1, eps, y), pts, step)
                compare(f"x-derivative of order {order}", self.derivative(order, eps, pts), numeric)

            if self.de is not None:
                numeric = _central(lambda e: self.lift(e, pts), eps, step)
                compare("de", self.de(eps, pts), numeric)
            if self.dee is not None and self.de is not None:
                numeric = _central(lambda e: self.de(e, pts), eps, step)
                compare("dee", self.dee(eps, pts), numeric)
            if self.dedx is not None and self.de is not None:
                numeric = _central(lambda y: self.de(eps, y), pts, step)
                compare("dedx", self.dedx(eps, pts), numeric)

        for eps in (lo, hi):
            residual = np.abs(self.lift(eps, x + 1.0) - self.lift(eps, x) - self.degree)
            if float(np.max(residual)) > _PERIODICITY_TOL:
                raise ConsistencyError(
                    f"{self.name}: lift is not degree-{self.degree} periodic "
                    f"(residual {float(np.max(residual)):.3e})"
                )

        logger.debug(f"{self.name}: derivative callables consistent at {points} points")

    def __repr__(self) -> str:
        return f"ParamCircleMap({self.name}, degree={self.degree}, r={self.smoothness_order})"
