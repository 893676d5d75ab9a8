"""Truncated Fourier representation of real functions on the circle."""

from typing import Mapping, Optional

import numpy as np

TWO_PI = 2.0 * np.pi

# Coefficient asymmetry tolerated before a function is rejected as non-real
_HERMITIAN_TOL = 1e-10


class AliasingError(ValueError):
    """Raised when a grid is too coarse for the requested truncation."""


def default_quadrature(modes: int) -> int:
    """Default rectangle-rule grid size, 8 points per retained mode."""
    return 8 * (2 * modes + 1)


def uniform_grid(points: int) -> np.ndarray:
    """Uniform grid x_q = q / points on [0, 1)."""
    return np.arange(points, dtype=float) / points


def wavenumbers(modes: int) -> np.ndarray:
    """Integer wavenumbers -M..M in storage order."""
    return np.arange(-modes, modes + 1)


class FourierFunction:
    """
    A real function on the circle stored as coefficients of e^{2πikx}, |k| ≤ M.

    Coefficients are kept densely over the symmetric index range and are
    symmetrized at construction so that coeff(-k) = conj(coeff(k)) holds
    exactly. Instances are immutable.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: np.ndarray):
        """
        Initialize from a length-(2M+1) coefficient array ordered k = -M..M.

        Args:
            coeffs: Complex coefficients

        Raises:
            ValueError: If the length is even or the coefficients are not
                Hermitian to within 1e-10 (relative)
        """
        c = np.asarray(coeffs, dtype=complex)
        if c.ndim != 1 or c.size % 2 == 0:
            raise ValueError("coefficient array must have odd length 2M+1")

        mirrored = np.conj(c[::-1])
        scale = max(1.0, float(np.max(np.abs(c))))
        asymmetry = float(np.max(np.abs(c - mirrored)))
        if asymmetry > _HERMITIAN_TOL * scale:
            raise ValueError(f"coefficients are not Hermitian (asymmetry {asymmetry:.3e})")

        symmetric = 0.5 * (c + mirrored)
        symmetric.setflags(write=False)
        object.__setattr__(self, "_coeffs", symmetric)

    def __setattr__(self, name, value):
        raise AttributeError("FourierFunction is immutable")

    # Constructors

    @classmethod
    def zeros(cls, modes: int) -> "FourierFunction":
        return cls(np.zeros(2 * modes + 1, dtype=complex))

    @classmethod
    def constant(cls, value: float, modes: int) -> "FourierFunction":
        c = np.zeros(2 * modes + 1, dtype=complex)
        c[modes] = value
        return cls(c)

    @classmethod
    def from_modes(cls, modes: int, values: Mapping[int, complex]) -> "FourierFunction":
        """
        Build from a sparse {k: coeff(k)} table; the conjugate mode is filled in.

        Args:
            modes: Truncation order M
            values: Coefficients for k >= 0 (negative keys are also accepted)
        """
        c = np.zeros(2 * modes + 1, dtype=complex)
        for k, value in values.items():
            if abs(k) > modes:
                raise ValueError(f"mode {k} exceeds truncation order {modes}")
            c[k + modes] = value
            c[-k + modes] = np.conj(value) if k != 0 else np.real(value)
        return cls(c)

    @classmethod
    def cosine(cls, frequency: int, modes: int, amplitude: float = 1.0) -> "FourierFunction":
        """amplitude * cos(2π frequency x)."""
        return cls.from_modes(modes, {frequency: 0.5 * amplitude})

    @classmethod
    def sine(cls, frequency: int, modes: int, amplitude: float = 1.0) -> "FourierFunction":
        """amplitude * sin(2π frequency x)."""
        return cls.from_modes(modes, {frequency: -0.5j * amplitude})

    # Accessors

    @property
    def modes(self) -> int:
        return (self._coeffs.size - 1) // 2

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    def coeff(self, k: int) -> complex:
        if abs(k) > self.modes:
            return 0.0j
        return complex(self._coeffs[k + self.modes])

    @property
    def mean(self) -> float:
        return float(self._coeffs[self.modes].real)

    # Arithmetic

    def _check_modes(self, other: "FourierFunction") -> None:
        if other.modes != self.modes:
            raise ValueError(f"mode mismatch: {self.modes} vs {other.modes}")

    def __add__(self, other: "FourierFunction") -> "FourierFunction":
        self._check_modes(other)
        return FourierFunction(self._coeffs + other._coeffs)

    def __sub__(self, other: "FourierFunction") -> "FourierFunction":
        self._check_modes(other)
        return FourierFunction(self._coeffs - other._coeffs)

    def __mul__(self, scalar: float) -> "FourierFunction":
        return FourierFunction(self._coeffs * float(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar: float) -> "FourierFunction":
        return FourierFunction(self._coeffs / float(scalar))

    def __neg__(self) -> "FourierFunction":
        return FourierFunction(-self._coeffs)

    def with_mean(self, value: float) -> "FourierFunction":
        """Copy with coeff(0) replaced; used to renormalize densities."""
        c = self._coeffs.copy()
        c[self.modes] = value
        return FourierFunction(c)

    def resize(self, modes: int) -> "FourierFunction":
        """Zero-pad or truncate to a new order M."""
        if modes == self.modes:
            return self
        c = np.zeros(2 * modes + 1, dtype=complex)
        keep = min(modes, self.modes)
        c[modes - keep : modes + keep + 1] = self._coeffs[self.modes - keep : self.modes + keep + 1]
        return FourierFunction(c)

    # Evaluation

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        """Values at arbitrary points by direct summation."""
        pts = np.asarray(x, dtype=float)
        phases = np.exp(TWO_PI * 1j * np.multiply.outer(pts, wavenumbers(self.modes)))
        return (phases @ self._coeffs).real

    def grid_values(self, points: Optional[int] = None) -> np.ndarray:
        """
        Values on the uniform grid x_q = q/Q via the inverse FFT.

        Raises:
            AliasingError: If Q < 2M+1
        """
        q = default_quadrature(self.modes) if points is None else int(points)
        if q < 2 * self.modes + 1:
            raise AliasingError(f"grid of {q} points cannot carry {self.modes} modes")
        buffer = np.zeros(q, dtype=complex)
        buffer[wavenumbers(self.modes) % q] = self._coeffs
        return (np.fft.ifft(buffer) * q).real

    def inner(self, other: "FourierFunction") -> float:
        """∫ f g dm, computed from coefficients (Parseval)."""
        self._check_modes(other)
        return float(np.vdot(other._coeffs, self._coeffs).real)

    def __repr__(self) -> str:
        return f"FourierFunction(modes={self.modes}, mean={self.mean:.6g})"


def project(samples: np.ndarray, modes: int) -> FourierFunction:
    """
    Discrete Fourier interpolant of uniform-grid samples, truncated to |k| ≤ M.

    Exact for trigonometric polynomials of degree ≤ M whenever P ≥ 2M+1.

    Args:
        samples: Real values at x_q = q/P
        modes: Truncation order M

    Returns:
        FourierFunction of order M

    Raises:
        AliasingError: If P < 2M+1
    """
    values = np.asarray(samples, dtype=float)
    points = values.size
    if points < 2 * modes + 1:
        raise AliasingError(f"{points} samples cannot resolve {modes} modes (need {2 * modes + 1})")
    spectrum = np.fft.fft(values) / points
    return FourierFunction(spectrum[wavenumbers(modes) % points])


def derivative(f: FourierFunction, order: int = 1) -> FourierFunction:
    """j-th derivative: coeff(k) ↦ (2πik)^j coeff(k)."""
    if order < 0:
        raise ValueError("derivative order must be non-negative")
    if order == 0:
        return f
    factor = (TWO_PI * 1j * wavenumbers(f.modes)) ** order
    return FourierFunction(f.coeffs * factor)


def antiderivative(f: FourierFunction) -> FourierFunction:
    """
    Periodic primitive F with F' = f and F(0) = 0.

    Raises:
        ValueError: If f does not have mean zero
    """
    if abs(f.mean) > 1e-12 * max(1.0, float(np.max(np.abs(f.coeffs)))):
        raise ValueError("only mean-zero functions have periodic primitives")
    k = wavenumbers(f.modes)
    c = np.zeros_like(f.coeffs)
    nonzero = k != 0
    c[nonzero] = f.coeffs[nonzero] / (TWO_PI * 1j * k[nonzero])
    c[f.modes] = -np.sum(c[nonzero]).real
    return FourierFunction(c)


def multiply(f: FourierFunction, g: FourierFunction, points: Optional[int] = None) -> FourierFunction:
    """Pointwise product on a grid, projected back to the order of f."""
    q = points or max(default_quadrature(f.modes), 3 * (f.modes + g.modes) + 1)
    return project(f.grid_values(q) * g.grid_values(q), f.modes)


def sobolev_norm(f: FourierFunction, ell: int, points: Optional[int] = None) -> float:
    """
    W^{ℓ,1} norm Σ_{j≤ℓ} ‖f^{(j)}‖_{L¹} by the rectangle rule on a uniform grid.

    Args:
        f: Function to measure
        ell: Sobolev order ℓ ≥ 0 (ℓ = 0 is the L¹ norm)
        points: Quadrature grid size Q ≥ 2M+1 (default 8(2M+1))

    Returns:
        The norm
    """
    if ell < 0:
        raise ValueError("Sobolev order must be non-negative")
    q = default_quadrature(f.modes) if points is None else int(points)
    total = 0.0
    for j in range(ell + 1):
        total += float(np.mean(np.abs(derivative(f, j).grid_values(q))))
    return total


def random_fourier(
    rng: np.random.Generator,
    modes: int,
    degree: Optional[int] = None,
    mean_zero: bool = False,
    decay: float = 1.0,
) -> FourierFunction:
    """
    Random real trigonometric polynomial used as a test function.

    Args:
        rng: Random generator
        modes: Storage order M
        degree: Highest populated mode (default M // 2)
        mean_zero: Force coeff(0) = 0
        decay: Coefficients are scaled by (1 + |k|)^-decay

    Returns:
        FourierFunction of order M
    """
    top = modes // 2 if degree is None else min(degree, modes)
    values = {}
    for k in range(0, top + 1):
        amplitude = (1.0 + k) ** (-decay)
        if k == 0:
            values[0] = 0.0 if mean_zero else amplitude * rng.standard_normal()
        else:
            values[k] = amplitude * (rng.standard_normal() + 1j * rng.standard_normal()) / 2.0
    return FourierFunction.from_modes(modes, values)
