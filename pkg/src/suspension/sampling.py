"""Sampling the suspension over the heavy-tailed roof."""

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Tuple

import numpy as np
from scipy.special import zeta

from ..utils import TaskExecutor, get_logger, task_rng

logger = get_logger(__name__)

# Roof values up to this size are drawn from a precomputed survival table
TABLE_SIZE = 1 << 16

# Largest roof value ever returned; beyond it the law is truncated
ROOF_CAP = 1 << 53

# Samples drawn per independent substream
BLOCK_SIZE = 1 << 16

IDENTITY_SYMBOL = "I"
DOUBLING_SYMBOL = "D"


class ZetaLaw:
    """
    The law P(X = n) = n^{-s} / zeta(s) on n >= 1, for s > 1.

    Survival probabilities P(X >= n) = zeta(s, n) / zeta(s) come from the
    Hurwitz zeta function, so no partial sums are accumulated. Sampling
    inverts the survival function: a table lookup for X <= 2^16 and a
    vectorized bisection beyond.
    """

    def __init__(self, s: float):
        if s <= 1.0:
            raise ValueError(f"zeta law needs s > 1 (got {s})")
        self.s = float(s)
        self.normalizer = float(zeta(self.s))
        # survival(n) for n = 2 .. TABLE_SIZE + 1
        self._table = self.survival(np.arange(2, TABLE_SIZE + 2))

    def pmf(self, n):
        return np.asarray(n, dtype=float) ** (-self.s) / self.normalizer

    def survival(self, n):
        """P(X >= n)."""
        return zeta(self.s, np.asarray(n, dtype=float)) / self.normalizer

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """
        Draw ``size`` values: X is the least n with P(X >= n + 1) <= v, v ~ U(0, 1).

        Args:
            rng: Random generator
            size: Number of draws

        Returns:
            int64 array
        """
        v = rng.random(size)
        index = np.searchsorted(-self._table, -v, side="left")
        out = (index + 1).astype(np.int64)

        tail = index == TABLE_SIZE
        if np.any(tail):
            out[tail] = self._bisect(v[tail])
        return out

    def _bisect(self, v: np.ndarray) -> np.ndarray:
        lo = np.full(v.size, TABLE_SIZE, dtype=np.int64)
        hi = np.full(v.size, ROOF_CAP, dtype=np.int64)
        while np.any(hi - lo > 1):
            mid = lo + (hi - lo) // 2
            below = self.survival(mid + 1) <= v
            hi = np.where(below, mid, hi)
            lo = np.where(below, lo, mid)
        return hi


@lru_cache(maxsize=None)
def zeta_law(s: float) -> ZetaLaw:
    """Shared ZetaLaw per exponent."""
    return ZetaLaw(s)


def _check_delta(delta: float) -> None:
    if not 0.0 < delta <= 1.0:
        raise ValueError(f"delta must lie in (0, 1] for an integrable roof (got {delta})")


@dataclass(frozen=True)
class SuspensionState:
    """
    A point (omega, i) of the suspension, with omega realized lazily.

    Attributes:
        omega0: Current roof value h(omega) >= 1
        i: Height, 0 <= i < omega0
        delta: Tail exponent of the base law P(omega0 = n) ∝ n^{-(2+delta)}
        seed: Master seed of the future symbol stream
        stream: Index of this state's substream
    """

    omega0: int
    i: int
    delta: float
    seed: int = 0
    stream: int = 0

    def __post_init__(self):
        if self.omega0 < 1 or not 0 <= self.i < self.omega0:
            raise ValueError(f"invalid suspension state (omega0={self.omega0}, i={self.i})")
        _check_delta(self.delta)

    @property
    def covering_time(self) -> int:
        """n_c = omega0 - i."""
        return self.omega0 - self.i

    def forward_symbols(self, n: int) -> Tuple[str, ...]:
        """
        Fiber symbols of the next n steps.

        The current column contributes omega0 - 1 - i identity fibers and one
        doubling fiber; later columns draw fresh roofs from the base law.
        """
        symbols: List[str] = []
        rng = task_rng(self.seed, 1, self.stream)
        law = zeta_law(2.0 + self.delta)
        roof, height = self.omega0, self.i
        while len(symbols) < n:
            identities = min(roof - 1 - height, n - len(symbols))
            symbols += [IDENTITY_SYMBOL] * identities
            if len(symbols) < n:
                symbols.append(DOUBLING_SYMBOL)
            roof, height = int(law.sample(rng, 1)[0]), 0
        return tuple(symbols)


def _sample_block(seed: int, delta: float, block: int, size: int) -> Tuple[np.ndarray, np.ndarray]:
    rng = task_rng(seed, 0, block)
    roofs = zeta_law(1.0 + delta).sample(rng, size)
    heights = rng.integers(0, roofs)
    return roofs, heights


def sample_heights(seed: int, delta: float, count: int, threads: int = 1) -> Tuple[np.ndarray, np.ndarray]:
    """
    I.i.d. draws of (omega0, i) from the suspension measure, as arrays.

    omega0 is size-biased, P(omega0 = n) = n^{-(1+delta)} / zeta(1+delta), and
    i is uniform on 0..omega0-1. Block b of 2^16 draws uses substream (seed, 0, b),
    so the result does not depend on ``threads``.

    Args:
        seed: Master seed
        delta: Tail exponent in (0, 1]
        count: Number of draws
        threads: Worker threads over blocks

    Returns:
        (omega0, i) int64 arrays of length ``count``

    Raises:
        ValueError: If delta is outside (0, 1] or count < 1
    """
    _check_delta(delta)
    if count < 1:
        raise ValueError("count must be at least 1")

    blocks = [(b, min(BLOCK_SIZE, count - b * BLOCK_SIZE)) for b in range(-(-count // BLOCK_SIZE))]
    tasks = [(b, (seed, delta, b, size)) for b, size in blocks]
    results = TaskExecutor(threads).map(_sample_block, tasks)
    failed = [r for r in results if not r.success]
    if failed:
        raise RuntimeError(f"sampling block {failed[0].key} failed: {failed[0].error}")

    roofs = np.concatenate([r.output[0] for r in results])
    heights = np.concatenate([r.output[1] for r in results])
    logger.debug(f"Sampled {count} suspension states (delta={delta}, max roof {int(roofs.max())})")
    return roofs, heights


def sample_suspension(seed: int, delta: float, count: int, threads: int = 1) -> List[SuspensionState]:
    """I.i.d. SuspensionStates; state k carries substream k for its future symbols."""
    roofs, heights = sample_heights(seed, delta, count, threads)
    return [
        SuspensionState(omega0=int(r), i=int(h), delta=delta, seed=seed, stream=k)
        for k, (r, h) in enumerate(zip(roofs, heights))
    ]
