"""Least-squares fits used by every rate estimator."""

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import stats


@dataclass(frozen=True)
class LinearFit:
    """
    Straight-line fit y ≈ slope * x + intercept.

    Attributes:
        slope: Fitted slope
        intercept: Fitted intercept
        r_squared: Coefficient of determination (1.0 for exact data)
        points: Number of points used
    """

    slope: float
    intercept: float
    r_squared: float
    points: int


def linear_fit(x: Sequence[float], y: Sequence[float]) -> LinearFit:
    """
    Ordinary least-squares line through (x, y).

    Args:
        x: Abscissae (at least two distinct values)
        y: Ordinates

    Returns:
        LinearFit; constant ``y`` gives slope 0 and R² = 1

    Raises:
        ValueError: If fewer than two points or the abscissae are constant
    """
    xs = np.asarray(x, dtype=float)
    ys = np.asarray(y, dtype=float)
    if xs.size < 2 or xs.size != ys.size:
        raise ValueError("linear_fit needs at least two (x, y) pairs of equal length")
    if np.ptp(xs) == 0.0:
        raise ValueError("linear_fit needs at least two distinct abscissae")

    if np.ptp(ys) == 0.0:
        return LinearFit(slope=0.0, intercept=float(ys[0]), r_squared=1.0, points=int(xs.size))

    result = stats.linregress(xs, ys)
    return LinearFit(
        slope=float(result.slope),
        intercept=float(result.intercept),
        r_squared=float(result.rvalue) ** 2,
        points=int(xs.size),
    )


def log_log_fit(x: Sequence[float], y: Sequence[float]) -> LinearFit:
    """Fit log y = slope * log x + intercept; all values must be positive."""
    xs = np.asarray(x, dtype=float)
    ys = np.asarray(y, dtype=float)
    if np.any(xs <= 0) or np.any(ys <= 0):
        raise ValueError("log_log_fit requires positive data")
    return linear_fit(np.log(xs), np.log(ys))


def tail_window(n_max: int, min_points: int = 5) -> range:
    """
    Indices of the second half of a trajectory 0..n_max, the fit window.

    The first half is treated as transient. The window always holds at least
    ``min_points`` indices.
    """
    if n_max + 1 < min_points:
        raise ValueError(f"trajectory of length {n_max + 1} is shorter than {min_points} points")
    start = min(n_max // 2, n_max + 1 - min_points)
    return range(start, n_max + 1)
