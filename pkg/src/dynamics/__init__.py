"""Parameterized circle maps, driving orbits and expansion diagnostics."""

from .circle_map import ConsistencyError, DegenerateMapError, ParamCircleMap
from .diagnostics import (
    CoveringTime,
    ExpansionReport,
    covering_time,
    derivative_bound,
    expansion_report,
    lambda_lower_bound,
    min_expansion,
)
from .driving import DrivingOrbit, WindowError, constant_orbit, sample_orbit, stationary_distribution
from .families import FAMILIES, build_registry, builtin_family, list_families, make_observable

__all__ = [
    "ConsistencyError",
    "CoveringTime",
    "DegenerateMapError",
    "DrivingOrbit",
    "ExpansionReport",
    "FAMILIES",
    "ParamCircleMap",
    "WindowError",
    "build_registry",
    "builtin_family",
    "constant_orbit",
    "covering_time",
    "derivative_bound",
    "expansion_report",
    "lambda_lower_bound",
    "list_families",
    "make_observable",
    "min_expansion",
    "sample_orbit",
    "stationary_distribution",
]
