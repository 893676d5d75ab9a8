"""Numerical check of the transfer-operator derivative identity."""

from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np

from ..dynamics import ParamCircleMap
from ..operators import TransferMatrix, apply, assemble
from ..spectral import (
    FourierFunction,
    default_quadrature,
    derivative,
    project,
    random_fourier,
    sobolev_norm,
    uniform_grid,
)
from ..utils import get_logger
from .polynomials import CORRECTED, PRINTED, evaluate, g_polynomials

logger = get_logger(__name__)


@dataclass(frozen=True)
class VariantSelection:
    """Recursion variant with the smaller identity residual, and both residuals."""

    variant: str
    residuals: Dict[str, float]


def crim_bracket(
    circle_map: ParamCircleMap,
    eps: float,
    ell: int,
    variant: str,
    f: FourierFunction,
    points: Optional[int] = None,
) -> FourierFunction:
    """
    (T')^{-2 ell} sum_j G_{ell,j}(T', ..., T^(ell+1)) f^(j), sampled and projected.
    """
    q = default_quadrature(f.modes) if points is None else int(points)
    x = uniform_grid(q)
    slopes = [circle_map.derivative(i, eps, x) for i in range(1, ell + 2)]
    polys = g_polynomials(ell, variant, circle_map.smoothness_order)

    total = np.zeros(q)
    for j, poly in enumerate(polys):
        total += evaluate(poly, slopes) * derivative(f, j).grid_values(q)
    return project(total / slopes[0] ** (2 * ell), f.modes)


def verify_crim_identity(
    circle_map: ParamCircleMap,
    eps: float,
    ell: int,
    variant: str,
    f: FourierFunction,
    quadrature: Optional[int] = None,
    matrix: Optional[TransferMatrix] = None,
) -> float:
    """
    L1 residual of (L f)^(ell) = L((T')^{-2 ell} sum_j G_{ell,j} f^(j)).

    The left side is the spectral derivative of L f; the right side evaluates the
    bracket on the quadrature grid, projects it and applies L.

    Args:
        circle_map: Map family
        eps: Parameter value
        ell: Derivative order with ell + 1 <= smoothness order
        variant: Recursion variant (``printed`` or ``corrected``)
        f: Test function (its truncation order sets M)
        quadrature: Grid size Q
        matrix: Pre-assembled matrix of circle_map at eps

    Returns:
        ||LHS - RHS||_{L1}
    """
    A = matrix if matrix is not None else assemble(circle_map, eps, f.modes, quadrature)
    lhs = derivative(apply(A, f), ell)
    rhs = apply(A, crim_bracket(circle_map, eps, ell, variant, f, quadrature))
    return sobolev_norm(lhs - rhs, 0, quadrature)


def select_variant(
    circle_map: ParamCircleMap,
    eps: float,
    ell: int,
    f: Optional[FourierFunction] = None,
    modes: int = 64,
    quadrature: Optional[int] = None,
    seed: int = 0,
) -> VariantSelection:
    """
    Run the identity for both recursion variants and keep the smaller residual.

    The default test function is a random trigonometric polynomial of degree M/8.
    """
    if f is None:
        f = random_fourier(np.random.default_rng(seed), modes, degree=max(1, modes // 8))
    A = assemble(circle_map, eps, f.modes, quadrature)
    residuals = {
        variant: verify_crim_identity(circle_map, eps, ell, variant, f, quadrature, matrix=A)
        for variant in (PRINTED, CORRECTED)
    }
    chosen = min(residuals, key=lambda v: (residuals[v], v != CORRECTED))
    logger.info(
        f"{circle_map.name}, ell={ell}: residuals printed={residuals[PRINTED]:.3e}, "
        f"corrected={residuals[CORRECTED]:.3e} -> {chosen}"
    )
    return VariantSelection(variant=chosen, residuals=residuals)
