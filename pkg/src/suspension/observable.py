"""The observable psi whose correlations see the covering time."""

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from ..dynamics import builtin_family
from ..operators import apply, assemble
from ..spectral import FourierFunction, bump_observable, uniform_grid

# Grid used to measure the mass of psi outside its support
_LEAKAGE_POINTS = 1 << 14

Arc = Tuple[float, float]


@dataclass(frozen=True)
class PsiObservable:
    """
    Attributes:
        interval: Arc I carrying the bump
        profile: psi, mean 0 and ∫ psi² dm = 1
        antiperiodic: psi(x + 1/2) = -psi(x); the support is then I ∪ (I + 1/2)
        leakage: L1 mass of psi outside its support, relative to ||psi||_{L1}
        doubling_correlation: ∫ psi * psi o T_0 dm for the doubling map T_0
    """

    interval: Arc
    profile: FourierFunction
    antiperiodic: bool
    leakage: float
    doubling_correlation: float

    def support(self) -> List[Arc]:
        return _support_arcs(self.interval, self.antiperiodic)


def _shift(arc: Arc, offset: float) -> Arc:
    a, b = arc
    return ((a + offset) % 1.0, (a + offset) % 1.0 + (b - a))


def _support_arcs(arc: Arc, antiperiodic: bool) -> List[Arc]:
    return [arc, _shift(arc, 0.5)] if antiperiodic else [arc]


def _contains(arc: Arc, x: np.ndarray) -> np.ndarray:
    a, b = arc
    return (x - a) % 1.0 < (b - a)


def arcs_overlap(first: Arc, second: Arc) -> bool:
    """Whether two open arcs of the circle intersect."""
    (a, b), (c, d) = first, second
    return (c - a) % 1.0 < (b - a) or (a - c) % 1.0 < (d - c)


def _doubling_preimages(arc: Arc) -> List[Arc]:
    a, b = arc
    return [(a / 2.0, b / 2.0), (a / 2.0 + 0.5, b / 2.0 + 0.5)]


def make_psi(interval: Arc = (0.55, 0.75), modes: int = 64, antiperiodic: bool = True) -> PsiObservable:
    """
    Smooth observable supported on I with psi ⊥ psi o T_0.

    Args:
        interval: Arc (a, b) with 0 < a < b < 1
        modes: Truncation order M
        antiperiodic: Use g(x) - g(x + 1/2), which the doubling transfer operator annihilates

    Returns:
        PsiObservable

    Raises:
        ValueError: If I meets one of its preimages under doubling
    """
    arc = (float(interval[0]), float(interval[1]))
    for preimage in _doubling_preimages(arc):
        if arcs_overlap(arc, preimage):
            raise ValueError(f"arc {arc} meets its doubling preimage {preimage}")

    psi = bump_observable(arc, modes, antiperiodic=antiperiodic)
    x = uniform_grid(_LEAKAGE_POINTS)
    values = np.abs(psi.grid_values(_LEAKAGE_POINTS))
    inside = np.zeros(x.size, dtype=bool)
    for part in _support_arcs(arc, antiperiodic):
        inside |= _contains(part, x)
    leakage = float(values[~inside].sum() / values.sum())

    doubling = builtin_family("doubling", check=False)
    correlation = psi.inner(apply(assemble(doubling, 0.0, modes), psi))
    return PsiObservable(
        interval=arc,
        profile=psi,
        antiperiodic=antiperiodic,
        leakage=leakage,
        doubling_correlation=float(correlation),
    )
