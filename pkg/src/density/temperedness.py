"""Finite-window temperedness diagnostics for random constants."""

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence, Tuple, Union

import numpy as np


@dataclass(frozen=True)
class TemperednessReport:
    """
    Attributes:
        K_a: max_n series(n) e^{-a|n|}
        sublinear_ok: Growth exponents decline across dyadic shells
        shell_exponents: max over the shell 2^{j-1} <= |n| < 2^j of log+(series(n)) / |n|
    """

    K_a: float
    sublinear_ok: bool
    shell_exponents: Tuple[float, ...]


def temperedness_diagnostic(
    series: Union[Sequence[float], Mapping[int, float]],
    a: float,
    indices: Optional[Sequence[int]] = None,
) -> TemperednessReport:
    """
    Check a positive series on n = -N..N for subexponential growth.

    ``sublinear_ok`` holds when every shell exponent vanishes, or when the
    outermost shell's exponent is at most half the largest one.

    Args:
        series: Values indexed by n; a plain sequence of length 2N+1 is read as n = -N..N
        a: Weight exponent (> 0)
        indices: Explicit fiber indices for a plain sequence

    Returns:
        TemperednessReport

    Raises:
        ValueError: On nonpositive entries, a <= 0, or fewer than two shells
    """
    if a <= 0.0:
        raise ValueError("a must be positive")
    if isinstance(series, Mapping):
        ns = np.array(sorted(series), dtype=int)
        values = np.array([series[n] for n in ns], dtype=float)
    else:
        values = np.asarray(series, dtype=float)
        if indices is None:
            half = (values.size - 1) // 2
            ns = np.arange(-half, -half + values.size)
        else:
            ns = np.asarray(indices, dtype=int)
    if np.any(values <= 0.0):
        raise ValueError("temperedness needs a positive series")

    distance = np.abs(ns)
    K_a = float(np.max(values * np.exp(-a * distance)))

    top = int(distance.max())
    shells = int(np.floor(np.log2(top))) + 1 if top >= 1 else 0
    if shells < 2:
        raise ValueError("temperedness needs |n| >= 2 in the window (at least two dyadic shells)")

    exponents = []
    growth = np.log(np.maximum(values, 1.0))
    for j in range(1, shells + 1):
        mask = (distance >= 2 ** (j - 1)) & (distance < 2**j)
        exponents.append(float(np.max(growth[mask] / distance[mask])))

    peak = max(exponents)
    ok = peak == 0.0 or exponents[-1] <= 0.5 * peak
    return TemperednessReport(K_a=K_a, sublinear_ok=bool(ok), shell_exponents=tuple(exponents))
