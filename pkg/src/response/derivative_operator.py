"""The derivative operator of the fiber transfer operators at eps = 0."""

from typing import Optional

import numpy as np

from ..dynamics import DegenerateMapError, ParamCircleMap
from ..operators import TransferMatrix, apply, assemble
from ..spectral import FourierFunction, default_quadrature, derivative, multiply, project, uniform_grid


def derivative_operator(
    circle_map: ParamCircleMap,
    phi: FourierFunction,
    matrix: Optional[TransferMatrix] = None,
    quadrature: Optional[int] = None,
) -> FourierFunction:
    """
    d/deps L_eps phi at eps = 0, as L_0(J phi + V(phi)).

    With g = 1/T', J = (d_eps g + V(g)) / g and V(u) = -u' d_eps T / T'.
    At eps = 0 this reduces to J = -d_eps T' / T' + T'' d_eps T / T'^2.
    The integrand is sampled on the quadrature grid, projected to the order
    of phi and pushed through L_0. The mean of the result vanishes exactly
    and is reset to 0.

    Args:
        circle_map: Fiber family with eps-derivatives
        phi: Function to differentiate against
        matrix: Pre-assembled L_0 matrix (order must match phi)
        quadrature: Grid size Q

    Returns:
        Mean-zero FourierFunction

    Raises:
        ValueError: If the family lacks eps-derivatives
        DegenerateMapError: If T'(0, .) vanishes on the grid
    """
    if not circle_map.has_eps_derivatives:
        raise ValueError(f"{circle_map.name} has no eps-derivatives; the derivative operator is undefined")

    modes = phi.modes
    q = default_quadrature(modes) if quadrature is None else int(quadrature)
    x = uniform_grid(q)

    slope = circle_map.dx(0.0, x)
    if float(np.min(np.abs(slope))) <= 0.0:
        raise DegenerateMapError(f"{circle_map.name}: T' vanishes at eps=0")
    curvature = circle_map.dxx(0.0, x)
    de = circle_map.de(0.0, x)
    dedx = circle_map.dedx(0.0, x)

    J = -dedx / slope + curvature * de / slope**2
    V = -derivative(phi).grid_values(q) * de / slope
    integrand = project(J * phi.grid_values(q) + V, modes)

    A = matrix if matrix is not None else assemble(circle_map, 0.0, modes, q)
    return apply(A, integrand).with_mean(0.0)


def appendix_derivative_operator(
    matrix: TransferMatrix,
    S: FourierFunction,
    f: FourierFunction,
    quadrature: Optional[int] = None,
) -> FourierFunction:
    """-(L_0 f * S)' for maps of the form D_eps o T_0 with D_eps(y) = y + eps S(y)."""
    return -derivative(multiply(apply(matrix, f), S.resize(f.modes), quadrature))
