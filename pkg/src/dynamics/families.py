"""Registry of built-in parameterized circle-map families."""

from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple

import numpy as np

from ..spectral import FourierFunction, antiderivative, bump_observable, derivative
from ..utils import get_logger
from .circle_map import DegenerateMapError, MapCallable, ParamCircleMap

logger = get_logger(__name__)

TWO_PI = 2.0 * np.pi

# Every built-in family carries x-derivatives up to this order
SMOOTHNESS = 6


def _constant(value: float) -> MapCallable:
    return lambda eps, x: np.full(np.shape(x), float(value))


def _sinusoid(amplitude: float, frequency: int, phase: float, order: int) -> Callable[[np.ndarray], np.ndarray]:
    """order-th derivative of amplitude * sin(2π frequency x + phase)."""
    scale = amplitude * (TWO_PI * frequency) ** order
    shift = phase + 0.5 * np.pi * order
    return lambda x: scale * np.sin(TWO_PI * frequency * np.asarray(x) + shift)


def _name(family: str, params: Mapping[str, Any]) -> str:
    shown = ", ".join(f"{k}={v}" for k, v in sorted(params.items()) if not isinstance(v, (dict, list)))
    return f"{family}({shown})" if shown else family


def _require_integer_degree(beta: Any) -> int:
    if int(beta) != beta or int(beta) < 1:
        raise ValueError(f"beta must be a positive integer (got {beta})")
    return int(beta)


def _linear(family: str, params: Mapping[str, Any]) -> ParamCircleMap:
    """x -> beta x, unperturbed; de, dee and dedx vanish identically."""
    beta = _require_integer_degree(params["beta"])
    eps_max = float(params["eps_max"])
    x_derivatives = (_constant(beta),) + tuple(_constant(0.0) for _ in range(SMOOTHNESS - 1))
    zero = _constant(0.0)
    return ParamCircleMap(
        name=family if family == "identity" else _name(family, {"beta": beta}),
        degree=beta,
        lift=lambda eps, x: beta * np.asarray(x, dtype=float),
        x_derivatives=x_derivatives,
        de=zero,
        dee=zero,
        dedx=zero,
        eps_range=(-eps_max, eps_max),
        params={"beta": beta, "eps_max": eps_max},
    )


def _identity(params: Mapping[str, Any]) -> ParamCircleMap:
    return _linear("identity", {"beta": 1, "eps_max": params["eps_max"]})


def _doubling(params: Mapping[str, Any]) -> ParamCircleMap:
    return _linear("doubling", params)


def _linear_eps2(params: Mapping[str, Any]) -> ParamCircleMap:
    """
    x -> (Id + eps² D)(beta x) with D(y) = a sin(2π m y) / (2π m).

    D is periodic, so the degree stays beta and T'(eps, x) = beta (1 + eps² D'(beta x)).
    """
    beta = _require_integer_degree(params["beta"])
    a = float(params["amplitude"])
    m = int(params["frequency"])
    eps_max = float(params["eps_max"])
    if m < 1:
        raise ValueError("frequency must be a positive integer")
    if 1.0 - eps_max**2 * abs(a) <= 0.0:
        raise DegenerateMapError(f"linear_eps2: 1 - eps_max² |a| = {1.0 - eps_max**2 * abs(a):.3g} <= 0")

    # D^{(k)}(y) for k = 0..SMOOTHNESS
    d = [_sinusoid(a / (TWO_PI * m), m, 0.0, k) for k in range(SMOOTHNESS + 1)]

    def lift(eps: float, x: np.ndarray) -> np.ndarray:
        y = beta * np.asarray(x, dtype=float)
        return y + eps**2 * d[0](y)

    def make_derivative(order: int) -> MapCallable:
        def value(eps: float, x: np.ndarray) -> np.ndarray:
            y = beta * np.asarray(x, dtype=float)
            out = eps**2 * beta**order * d[order](y)
            return out + beta if order == 1 else out

        return value

    return ParamCircleMap(
        name=_name("linear_eps2", {"beta": beta, "amplitude": a, "frequency": m}),
        degree=beta,
        lift=lift,
        x_derivatives=tuple(make_derivative(k) for k in range(1, SMOOTHNESS + 1)),
        de=lambda eps, x: 2.0 * eps * d[0](beta * np.asarray(x, dtype=float)),
        dee=lambda eps, x: 2.0 * d[0](beta * np.asarray(x, dtype=float)),
        dedx=lambda eps, x: 2.0 * eps * beta * d[1](beta * np.asarray(x, dtype=float)),
        eps_range=(-eps_max, eps_max),
        params={"beta": beta, "amplitude": a, "frequency": m, "eps_max": eps_max},
    )


def _additive(params: Mapping[str, Any]) -> ParamCircleMap:
    """
    x -> beta x + a sin(2π m x + phase) + eps c sin(2π n x + d_phase).

    Admissible when beta - 2π m |a| - eps_max 2π n |c| > 0.
    """
    beta = _require_integer_degree(params["beta"])
    a = float(params["amplitude"])
    m = int(params["frequency"])
    phase = float(params["phase"])
    c = float(params["d_amplitude"])
    n = int(params["d_frequency"])
    d_phase = float(params["d_phase"])
    eps_max = float(params["eps_max"])

    margin = beta - TWO_PI * m * abs(a) - eps_max * TWO_PI * n * abs(c)
    if margin <= 0.0:
        raise DegenerateMapError(
            f"additive: lambda_i - eps_0 max|d_i'| = {margin:.4g} <= 0 "
            f"(beta={beta}, amplitude={a}, d_amplitude={c}, eps_max={eps_max})"
        )

    base = [_sinusoid(a, m, phase, k) for k in range(SMOOTHNESS + 1)]
    pert = [_sinusoid(c, n, d_phase, k) for k in range(SMOOTHNESS + 1)]

    def lift(eps: float, x: np.ndarray) -> np.ndarray:
        y = np.asarray(x, dtype=float)
        return beta * y + base[0](y) + eps * pert[0](y)

    def make_derivative(order: int) -> MapCallable:
        def value(eps: float, x: np.ndarray) -> np.ndarray:
            out = base[order](x) + eps * pert[order](x)
            return out + beta if order == 1 else out

        return value

    return ParamCircleMap(
        name=_name("additive", {"beta": beta, "amplitude": a, "frequency": m, "d_amplitude": c, "d_frequency": n}),
        degree=beta,
        lift=lift,
        x_derivatives=tuple(make_derivative(k) for k in range(1, SMOOTHNESS + 1)),
        de=lambda eps, x: pert[0](x),
        dee=_constant(0.0),
        dedx=lambda eps, x: pert[1](x),
        eps_range=(-eps_max, eps_max),
        params={
            "beta": beta,
            "amplitude": a,
            "frequency": m,
            "phase": phase,
            "d_amplitude": c,
            "d_frequency": n,
            "d_phase": d_phase,
            "eps_max": eps_max,
        },
    )


def make_observable(entry: Any, modes: int) -> FourierFunction:
    """
    Mean-zero observable psi from a config entry or a FourierFunction.

    Accepted entries are ``{"kind": "cosine", "frequency": k, "amplitude": a}``
    and ``{"kind": "bump", "interval": [a, b], "antiperiodic": bool}``.
    """
    if isinstance(entry, FourierFunction):
        return entry.resize(modes)
    kind = entry.get("kind", "cosine")
    if kind == "cosine":
        return FourierFunction.cosine(int(entry.get("frequency", 1)), modes, float(entry.get("amplitude", 1.0)))
    if kind == "bump":
        interval = tuple(entry.get("interval", (0.55, 0.75)))
        return bump_observable(interval, modes, antiperiodic=bool(entry.get("antiperiodic", False)))
    raise ValueError(f"unknown observable kind '{kind}' (expected 'cosine' or 'bump')")


def _doubling_composed(params: Mapping[str, Any]) -> ParamCircleMap:
    """
    x -> D_eps(beta x) with D_eps(y) = y + eps S(y) and S = -∫_0^y psi.

    T'(eps, x) = beta (1 - eps psi(beta x)); beta = 1 gives the perturbed identity.
    """
    beta = _require_integer_degree(params["beta"])
    eps_max = float(params["eps_max"])
    modes = int(params["modes"])
    psi = make_observable(params["psi"], modes)
    if abs(psi.mean) > 1e-12:
        raise ValueError("doubling_composed: psi must have mean zero")

    sup_psi = float(np.max(np.abs(psi.grid_values())))
    if 1.0 - eps_max * sup_psi <= 0.0:
        raise DegenerateMapError(
            f"doubling_composed: 1 - eps_max sup|psi| = {1.0 - eps_max * sup_psi:.3g} <= 0"
        )

    s = -antiderivative(psi)
    # S^{(k)} for k = 0..SMOOTHNESS; S^{(k)} = -psi^{(k-1)}
    s_derivs = [s] + [-derivative(psi, k - 1) for k in range(1, SMOOTHNESS + 1)]

    def lift(eps: float, x: np.ndarray) -> np.ndarray:
        y = beta * np.asarray(x, dtype=float)
        return y + eps * s.evaluate(y)

    def make_derivative(order: int) -> MapCallable:
        def value(eps: float, x: np.ndarray) -> np.ndarray:
            y = beta * np.asarray(x, dtype=float)
            out = eps * beta**order * s_derivs[order].evaluate(y)
            return out + beta if order == 1 else out

        return value

    psi_tag = params["psi"] if isinstance(params["psi"], dict) else {"kind": "custom"}
    return ParamCircleMap(
        name=_name("doubling_composed", {"beta": beta, "psi": str(psi_tag.get("kind")), "modes": modes}),
        degree=beta,
        lift=lift,
        x_derivatives=tuple(make_derivative(k) for k in range(1, SMOOTHNESS + 1)),
        de=lambda eps, x: s.evaluate(beta * np.asarray(x, dtype=float)),
        dee=_constant(0.0),
        dedx=lambda eps, x: beta * s_derivs[1].evaluate(beta * np.asarray(x, dtype=float)),
        eps_range=(-eps_max, eps_max),
        params={"beta": beta, "eps_max": eps_max, "modes": modes, "psi": psi_tag},
        metadata={"psi": psi, "S": s},
    )


# tag -> (builder, defaults)
FAMILIES: Dict[str, Tuple[Callable[[Mapping[str, Any]], ParamCircleMap], Dict[str, Any]]] = {
    "identity": (_identity, {"eps_max": 1.0}),
    "doubling": (_doubling, {"beta": 2, "eps_max": 1.0}),
    "linear_eps2": (_linear_eps2, {"beta": 2, "amplitude": 1.0, "frequency": 1, "eps_max": 0.5}),
    "additive": (
        _additive,
        {
            "beta": 2,
            "amplitude": 0.1,
            "frequency": 1,
            "phase": 0.0,
            "d_amplitude": 1.0,
            "d_frequency": 1,
            "d_phase": 0.0,
            "eps_max": 0.1,
        },
    ),
    "doubling_composed": (
        _doubling_composed,
        {"beta": 2, "eps_max": 0.25, "modes": 64, "psi": {"kind": "cosine", "frequency": 1, "amplitude": 1.0}},
    ),
}


def list_families() -> List[Tuple[str, Dict[str, Any]]]:
    """Registered family tags with their parameter defaults, sorted by tag."""
    return [(tag, dict(defaults)) for tag, (_, defaults) in sorted(FAMILIES.items())]


def builtin_family(name: str, params: Optional[Mapping[str, Any]] = None, check: bool = True) -> ParamCircleMap:
    """
    Build a map from the family registry.

    Args:
        name: Family tag (identity, doubling, linear_eps2, additive, doubling_composed)
        params: Overrides for the family defaults
        check: Cross-check derivatives by finite differences

    Returns:
        ParamCircleMap

    Raises:
        ValueError: Unknown tag or unknown parameter
        DegenerateMapError: Parameters violate min|T'| > 0 on the eps-range
        ConsistencyError: Derivative callables disagree with finite differences
    """
    if name not in FAMILIES:
        raise ValueError(f"unknown map family '{name}' (known: {', '.join(sorted(FAMILIES))})")
    builder, defaults = FAMILIES[name]
    params = dict(params or {})
    unknown = set(params) - set(defaults)
    if unknown:
        raise ValueError(f"unknown parameter(s) for family '{name}': {', '.join(sorted(unknown))}")

    resolved = {**defaults, **params}
    circle_map = builder(resolved)
    if check:
        circle_map.check_consistency()
    logger.debug(f"Built {circle_map.name}")
    return circle_map


def build_registry(maps: Mapping[str, Mapping[str, Any]]) -> Dict[str, ParamCircleMap]:
    """
    Build a symbol -> map registry from ``{symbol: {"family": tag, "params": {...}}}``.
    """
    registry = {}
    for symbol, entry in maps.items():
        registry[str(symbol)] = builtin_family(entry["family"], entry.get("params"))
    return registry
