"""Fourier-Galerkin matrices of fiber transfer operators."""

import threading
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..dynamics import DrivingOrbit, ParamCircleMap, WindowError
from ..spectral import (
    AliasingError,
    FourierFunction,
    default_quadrature,
    derivative,
    random_fourier,
    sobolev_norm,
    uniform_grid,
    wavenumbers,
)
from ..utils import get_logger

logger = get_logger(__name__)

# Entries below this magnitude are quadrature noise of exactly-zero couplings
_CHOP = 1e-14


class ModeMismatchError(ValueError):
    """Raised when a matrix and a function use different truncation orders."""


@dataclass(frozen=True, eq=False)
class TransferMatrix:
    """
    Galerkin matrix A[k, j] = <L e_j, e_k> over wavenumbers -M..M.

    Attributes:
        modes: Truncation order M
        entries: Complex (2M+1) x (2M+1) matrix, read-only
        provenance: Where the matrix came from (map name, eps, fibers, quadrature)
    """

    modes: int
    entries: np.ndarray
    provenance: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        size = 2 * self.modes + 1
        if self.entries.shape != (size, size):
            raise ValueError(f"entries of shape {self.entries.shape} do not match modes={self.modes}")
        self.entries.setflags(write=False)

    @classmethod
    def identity(cls, modes: int, **provenance: Any) -> "TransferMatrix":
        return cls(modes, np.eye(2 * modes + 1, dtype=complex), dict(provenance))

    def __matmul__(self, other: "TransferMatrix") -> "TransferMatrix":
        """self after other."""
        if other.modes != self.modes:
            raise ModeMismatchError(f"cannot compose M={self.modes} with M={other.modes}")
        return TransferMatrix(self.modes, self.entries @ other.entries, {"composed": True})


def assemble(
    circle_map: ParamCircleMap,
    eps: float,
    modes: int,
    quadrature: Optional[int] = None,
    fiber: Optional[int] = None,
) -> TransferMatrix:
    """
    Koopman-adjoint quadrature of the transfer operator of T(eps, .).

    A[k, j] = (1/Q) sum_q exp(2πi j x_q) exp(-2πi k T(eps, x_q)).

    Args:
        circle_map: Fiber map family
        eps: Parameter value
        modes: Truncation order M
        quadrature: Grid size Q >= 4M+4 (default 8(2M+1))
        fiber: Optional fiber index recorded in the provenance

    Returns:
        TransferMatrix

    Raises:
        AliasingError: If Q < 4M+4
    """
    q = default_quadrature(modes) if quadrature is None else int(quadrature)
    if q < 4 * modes + 4:
        raise AliasingError(f"assembly needs Q >= 4M+4 = {4 * modes + 4} points (got {q})")

    x = uniform_grid(q)
    k = wavenumbers(modes)

    slope = np.abs(circle_map.dx(eps, x))
    if float(np.min(slope)) <= 1.0:
        logger.warning(f"{circle_map.name} is not expanding at eps={eps} (min|T'| ~ {float(np.min(slope)):.4g})")

    image = np.mod(circle_map.lift(eps, x), 1.0)
    # Phases reduced mod 1 before exponentiation; grid phases are exact rationals
    X = np.exp(2j * np.pi * (np.multiply.outer(np.arange(q), k) % q) / q)
    Y = np.exp(-2j * np.pi * np.mod(np.multiply.outer(image, k), 1.0))
    entries = (Y.T @ X) / q
    entries[np.abs(entries) < _CHOP] = 0.0

    logger.debug(f"Assembled {circle_map.name} at eps={eps} (M={modes}, Q={q})")
    provenance = {"map": circle_map.name, "eps": float(eps), "quadrature": q}
    if fiber is not None:
        provenance["fiber"] = fiber
    return TransferMatrix(modes, entries, provenance)


def apply(matrix: TransferMatrix, f: FourierFunction) -> FourierFunction:
    """
    L f as a matrix-vector product.

    Raises:
        ModeMismatchError: If f has a different truncation order
    """
    if f.modes != matrix.modes:
        raise ModeMismatchError(f"function has M={f.modes}, matrix has M={matrix.modes}")
    return FourierFunction(matrix.entries @ f.coeffs)


def apply_adjoint(matrix: TransferMatrix, phi: FourierFunction) -> FourierFunction:
    """Galerkin projection of phi o T (the Koopman action, A^H phi)."""
    if phi.modes != matrix.modes:
        raise ModeMismatchError(f"function has M={phi.modes}, matrix has M={matrix.modes}")
    return FourierFunction(matrix.entries.conj().T @ phi.coeffs)


class TransferCache:
    """
    Thread-safe memo of fiber matrices keyed by (map, eps, M, Q).

    Two threads racing on the same key compute identical matrices; the first
    insertion wins.
    """

    def __init__(self):
        self._store: Dict[Tuple[ParamCircleMap, float, int, int], TransferMatrix] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(
        self,
        circle_map: ParamCircleMap,
        eps: float,
        modes: int,
        quadrature: Optional[int] = None,
    ) -> TransferMatrix:
        q = default_quadrature(modes) if quadrature is None else int(quadrature)
        key = (circle_map, float(eps), modes, q)
        with self._lock:
            cached = self._store.get(key)
            if cached is not None:
                self.hits += 1
                return cached

        matrix = assemble(circle_map, eps, modes, q)
        with self._lock:
            self.misses += 1
            return self._store.setdefault(key, matrix)

    def __len__(self) -> int:
        return len(self._store)

    def clear(self) -> None:
        with self._lock:
            self._store.clear()


_default_cache = TransferCache()


def default_cache() -> TransferCache:
    """Process-wide cache shared by all orbit computations."""
    return _default_cache


def _check_window(orbit: DrivingOrbit, start: int, steps: int) -> None:
    if steps < 0:
        raise ValueError("number of steps must be non-negative")
    if steps and (start < orbit.lo or start + steps - 1 > orbit.hi):
        raise WindowError(
            f"fibers {start}..{start + steps - 1} exceed the window [{orbit.lo}, {orbit.hi}]"
        )


def fiber_matrix(
    orbit: DrivingOrbit,
    eps: float,
    n: int,
    modes: int,
    quadrature: Optional[int] = None,
    cache: Optional[TransferCache] = None,
) -> TransferMatrix:
    """Matrix of fiber n, through the cache."""
    return (cache if cache is not None else _default_cache).get(orbit.fiber(n), eps, modes, quadrature)


def compose_forward(
    orbit: DrivingOrbit,
    eps: float,
    steps: int,
    start: int,
    modes: int,
    quadrature: Optional[int] = None,
    cache: Optional[TransferCache] = None,
) -> TransferMatrix:
    """
    A_{start+n-1} ... A_{start}, later fibers multiplying on the left.

    Raises:
        WindowError: If the fibers leave the orbit window
    """
    _check_window(orbit, start, steps)
    product = np.eye(2 * modes + 1, dtype=complex)
    for i in range(steps):
        product = fiber_matrix(orbit, eps, start + i, modes, quadrature, cache).entries @ product
    return TransferMatrix(modes, product, {"eps": float(eps), "start": start, "steps": steps})


def iterate_forward(
    orbit: DrivingOrbit,
    eps: float,
    f: FourierFunction,
    start: int,
    steps: int,
    quadrature: Optional[int] = None,
    cache: Optional[TransferCache] = None,
    renormalize: bool = False,
) -> Iterator[FourierFunction]:
    """
    Yield L^n_{start} f for n = 1..steps by successive matrix-vector products.

    With ``renormalize`` the mean is reset to mean(f) after each step.
    """
    _check_window(orbit, start, steps)
    mean = f.mean
    current = f
    for i in range(steps):
        current = apply(fiber_matrix(orbit, eps, start + i, f.modes, quadrature, cache), current)
        if renormalize:
            current = current.with_mean(mean)
        yield current


def push_forward(
    orbit: DrivingOrbit,
    eps: float,
    f: FourierFunction,
    start: int,
    steps: int,
    quadrature: Optional[int] = None,
    cache: Optional[TransferCache] = None,
    renormalize: bool = False,
) -> FourierFunction:
    """L^steps_{start} f (f itself when steps == 0)."""
    current = f
    for current in iterate_forward(orbit, eps, f, start, steps, quadrature, cache, renormalize):
        pass
    return current


def _basis(modes: int, top: int, mean_zero: bool) -> Iterator[FourierFunction]:
    if not mean_zero:
        yield FourierFunction.constant(1.0, modes)
    for k in range(1, top + 1):
        yield FourierFunction.cosine(k, modes)
        yield FourierFunction.sine(k, modes)


def _strength(f: FourierFunction, ell: int, seminorm: bool, points: Optional[int]) -> float:
    if seminorm:
        return float(np.mean(np.abs(derivative(f, ell).grid_values(points))))
    return sobolev_norm(f, ell, points)


def operator_norm_estimate(
    matrix: TransferMatrix,
    ell: int,
    trials: int = 16,
    mean_zero: bool = False,
    seminorm: bool = False,
    rng: Optional[np.random.Generator] = None,
    tests: Optional[Sequence[FourierFunction]] = None,
    points: Optional[int] = None,
) -> float:
    """
    Lower bound on the W^{ell,1} operator norm from unit test functions.

    The test set is the trigonometric basis up to M/2 together with ``trials``
    random functions (or the given ``tests``).

    Args:
        matrix: Operator to measure
        ell: Sobolev order
        trials: Number of random test functions (at least 16)
        mean_zero: Restrict to mean-zero tests
        seminorm: Measure only ||f^(ell)||_{L1} on both sides
        rng: Random generator (default seeded with 0)
        tests: Explicit test functions replacing the built-in set
        points: Quadrature grid size

    Returns:
        max ||A f|| / ||f|| over the tests
    """
    if trials < 16:
        raise ValueError("operator norm estimates need at least 16 trials")
    modes = matrix.modes
    if tests is None:
        generator = rng or np.random.default_rng(0)
        tests = list(_basis(modes, max(1, modes // 2), mean_zero))
        tests += [random_fourier(generator, modes, mean_zero=mean_zero) for _ in range(trials)]

    best = 0.0
    for f in tests:
        size = _strength(f, ell, seminorm, points)
        if size <= 1e-300:
            continue
        best = max(best, _strength(apply(matrix, f), ell, seminorm, points) / size)
    return best


def iterate_pullback(
    orbit: DrivingOrbit,
    eps: float,
    fiber: int,
    steps: int,
    modes: int,
    quadrature: Optional[int] = None,
    cache: Optional[TransferCache] = None,
) -> Iterator[TransferMatrix]:
    """
    Yield L^n_{sigma^{-n} omega} = A_{fiber-1} ... A_{fiber-n} for n = 1..steps.

    Each step multiplies the next earlier fiber on the right.

    Raises:
        WindowError: If fiber - steps falls outside the window
    """
    _check_window(orbit, fiber - steps, steps)
    product = np.eye(2 * modes + 1, dtype=complex)
    for n in range(1, steps + 1):
        product = product @ fiber_matrix(orbit, eps, fiber - n, modes, quadrature, cache).entries
        yield TransferMatrix(modes, product.copy(), {"eps": float(eps), "fiber": fiber, "pullback": n})
