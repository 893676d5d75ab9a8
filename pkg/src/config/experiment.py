"""Experiment configuration files: parsing, defaults and schema diagnostics."""

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from ..dynamics import FAMILIES, build_registry, min_expansion, sample_orbit
from ..response import check_eps_list
from .settings import Settings

EXPERIMENTS = ("density", "stability", "response", "ly_check", "crim_check", "counterexample", "lyapunov")

# Experiments that run on a driven cocycle
DRIVEN = ("density", "stability", "response", "ly_check", "lyapunov")

# Experiments whose results are fits against eps
NEEDS_EPS_GRID = ("stability", "response")

OPTION_DEFAULTS: Dict[str, Dict[str, Any]] = {
    "density": {"fibers": [0], "ell_check": 1},
    "stability": {"fiber": 0, "ell": 1},
    "response": {
        "fiber": 0,
        "ell": 1,
        "depth": None,
        "density_tol": 1e-12,
        "observable": {"kind": "cosine", "frequency": 1},
    },
    "ly_check": {"ells": [1, 2, 3], "trials": 100, "eps": 0.0},
    "crim_check": {"map": None, "ells": [1, 2, 3], "eps": 0.0, "modes": 64},
    "counterexample": {
        "delta": 0.5,
        "seed": 0,
        "sample_sizes": [10000, 100000],
        "caps": [2**k for k in range(4, 15)],
        "operator_samples": 0,
        "operator_modes": 64,
    },
    "lyapunov": {"fiber": 0, "ell": 1, "n_max": 40, "eps": 0.0, "trials": 16, "tests": 8},
}


@dataclass(frozen=True)
class Diagnostic:
    """One schema violation, located by a dotted field path."""

    field: str
    message: str

    def __str__(self) -> str:
        return f"{self.field}: {self.message}"


@dataclass
class ExperimentConfig:
    """
    A fully resolved experiment configuration.

    Attributes:
        experiment: Experiment tag
        maps: Symbol -> {"family": tag, "params": {...}}
        driving: {"family", "seed", "window", "params"}
        modes: Fourier truncation order M
        quadrature: Grid size Q (None for the default 8(2M+1))
        tol: Density tolerance
        eps_grid: Parameter values for rate fits
        output: Output directory
        threads: Worker threads
        options: Experiment-specific options with defaults filled in
    """

    experiment: str
    maps: Dict[str, Dict[str, Any]] = field(default_factory=dict)
    driving: Dict[str, Any] = field(default_factory=dict)
    modes: int = 32
    quadrature: Optional[int] = None
    tol: float = 1e-9
    eps_grid: List[float] = field(default_factory=list)
    output: str = "results"
    threads: int = 1
    options: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        """Resolved config in the file layout."""
        data = asdict(self)
        return {
            "experiment": data["experiment"],
            "cocycle": {"maps": data["maps"]},
            "driving": data["driving"],
            "discretization": {"modes": data["modes"], "quadrature": data["quadrature"], "tol": data["tol"]},
            "eps_grid": data["eps_grid"],
            "output": data["output"],
            "threads": data["threads"],
            "options": data["options"],
        }


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _check_maps(raw: Any, errors: List[Diagnostic]) -> Dict[str, Dict[str, Any]]:
    if not isinstance(raw, dict) or not raw:
        errors.append(Diagnostic("cocycle.maps", "must be a non-empty object of symbol -> map entries"))
        return {}
    maps = {}
    for symbol, entry in raw.items():
        path = f"cocycle.maps.{symbol}"
        if not isinstance(entry, dict):
            errors.append(Diagnostic(path, "must be an object with 'family' and 'params'"))
            continue
        family = entry.get("family")
        if family not in FAMILIES:
            errors.append(Diagnostic(f"{path}.family", f"unknown family {family!r} (known: {', '.join(sorted(FAMILIES))})"))
            continue
        params = entry.get("params", {})
        if not isinstance(params, dict):
            errors.append(Diagnostic(f"{path}.params", "must be an object"))
            continue
        maps[str(symbol)] = {"family": family, "params": dict(params)}
    return maps


def _check_eps_grid(
    eps_grid: List[float],
    registry: Dict[str, Any],
    errors: List[Diagnostic],
    fitted: bool,
) -> None:
    if fitted:
        try:
            check_eps_list(eps_grid)
        except ValueError as e:
            errors.append(Diagnostic("eps_grid", str(e)))
    for symbol, circle_map in registry.items():
        for k, eps in enumerate(eps_grid):
            if not circle_map.admits(eps) or not circle_map.admits(-eps):
                errors.append(
                    Diagnostic(
                        f"eps_grid[{k}]",
                        f"eps={eps} outside the admissible range {tuple(circle_map.eps_range)} of "
                        f"{symbol} = {circle_map.name}, where min|T'| > 0 is checked "
                        f"(min|T'| = {min_expansion(circle_map, eps):.4g} at this eps)",
                    )
                )


def parse_config(data: Any, settings: Optional[Settings] = None) -> Tuple[Optional[ExperimentConfig], List[Diagnostic]]:
    """
    Check a decoded config and resolve its defaults.

    Args:
        data: Decoded JSON document
        settings: Source of default modes, tolerance, threads and output directory

    Returns:
        (config, diagnostics); config is None whenever diagnostics is non-empty
    """
    settings = settings or Settings()
    errors: List[Diagnostic] = []
    if not isinstance(data, dict):
        return None, [Diagnostic("<root>", "config must be a JSON object")]

    unknown = set(data) - {"experiment", "cocycle", "driving", "discretization", "eps_grid", "output", "threads", "options"}
    for key in sorted(unknown):
        errors.append(Diagnostic(key, "unknown section"))

    experiment = data.get("experiment")
    if experiment not in EXPERIMENTS:
        errors.append(Diagnostic("experiment", f"must be one of {', '.join(EXPERIMENTS)} (got {experiment!r})"))
        return None, errors

    config = ExperimentConfig(
        experiment=experiment,
        modes=settings.modes,
        tol=settings.tol,
        output=settings.output_dir,
        threads=settings.threads,
    )

    discretization = data.get("discretization", {})
    if not isinstance(discretization, dict):
        errors.append(Diagnostic("discretization", "must be an object"))
        discretization = {}
    config.modes = discretization.get("modes", config.modes)
    config.quadrature = discretization.get("quadrature")
    config.tol = discretization.get("tol", config.tol)
    if not _is_int(config.modes) or config.modes < 1:
        errors.append(Diagnostic("discretization.modes", "must be a positive integer"))
    elif config.quadrature is not None and (not _is_int(config.quadrature) or config.quadrature < 4 * config.modes + 4):
        errors.append(Diagnostic("discretization.quadrature", f"must be an integer >= 4M+4 = {4 * config.modes + 4}"))
    if not _is_number(config.tol) or not 0.0 < config.tol < 1.0:
        errors.append(Diagnostic("discretization.tol", "must be a number in (0, 1)"))

    config.threads = data.get("threads", config.threads)
    if not _is_int(config.threads) or config.threads < 1:
        errors.append(Diagnostic("threads", "must be a positive integer"))
    config.output = data.get("output", config.output)
    if not isinstance(config.output, str) or not config.output:
        errors.append(Diagnostic("output", "must be a directory path"))

    options = data.get("options", {})
    if not isinstance(options, dict):
        errors.append(Diagnostic("options", "must be an object"))
        options = {}
    defaults = OPTION_DEFAULTS[experiment]
    for key in sorted(set(options) - set(defaults)):
        errors.append(Diagnostic(f"options.{key}", f"unknown option for experiment '{experiment}'"))
    config.options = {**defaults, **options}

    registry: Dict[str, Any] = {}
    if experiment != "counterexample":
        cocycle = data.get("cocycle")
        config.maps = _check_maps(cocycle.get("maps") if isinstance(cocycle, dict) else None, errors)
        for symbol, entry in config.maps.items():
            try:
                registry.update(build_registry({symbol: entry}))
            except ValueError as e:
                errors.append(Diagnostic(f"cocycle.maps.{symbol}", str(e)))

    if experiment in DRIVEN:
        driving = data.get("driving")
        if not isinstance(driving, dict):
            errors.append(Diagnostic("driving", "missing driving section"))
        else:
            config.driving = {
                "family": driving.get("family", "fixed"),
                "seed": driving.get("seed", 0),
                "window": driving.get("window", 32),
                "params": driving.get("params", {}),
            }
            if not _is_int(config.driving["seed"]):
                errors.append(Diagnostic("driving.seed", "must be an integer"))
            if not _is_int(config.driving["window"]) or config.driving["window"] < 1:
                errors.append(Diagnostic("driving.window", "must be a positive integer"))
            elif registry and len(registry) == len(config.maps):
                try:
                    sample_orbit(
                        config.driving["family"],
                        config.driving["seed"],
                        config.driving["window"],
                        config.driving["params"],
                        registry,
                    )
                except (ValueError, KeyError, TypeError) as e:
                    errors.append(Diagnostic("driving", f"{type(e).__name__}: {e}"))

    eps_grid = data.get("eps_grid")
    if eps_grid is None:
        if experiment in NEEDS_EPS_GRID:
            errors.append(Diagnostic("eps_grid", f"required for experiment '{experiment}'"))
    elif not isinstance(eps_grid, list) or not all(_is_number(e) for e in eps_grid):
        errors.append(Diagnostic("eps_grid", "must be a list of numbers"))
    else:
        config.eps_grid = [float(e) for e in eps_grid]
        _check_eps_grid(config.eps_grid, registry, errors, experiment in NEEDS_EPS_GRID)

    return (None, errors) if errors else (config, [])


def load_config(path: str, settings: Optional[Settings] = None) -> Tuple[Optional[ExperimentConfig], List[Diagnostic], str]:
    """
    Read, decode and check a JSON config file.

    Args:
        path: Config file path
        settings: Default source (see parse_config)

    Returns:
        (config, diagnostics, raw text); syntax errors carry line and column
    """
    file = Path(path)
    if not file.is_file():
        return None, [Diagnostic("<file>", f"no such config file: {path}")], ""
    text = file.read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        return None, [Diagnostic("<json>", f"line {e.lineno}, column {e.colno}: {e.msg}")], text
    config, errors = parse_config(data, settings)
    return config, errors, text
