"""Experiment nodes of the run workflow."""

from typing import Dict, Type

from .base_experiment import BaseExperiment
from .counterexample import CounterexampleExperiment
from .crim_check import CrimCheckExperiment
from .density import DensityExperiment
from .ly_check import LYCheckExperiment
from .lyapunov import LyapunovExperiment
from .response import ResponseExperiment
from .router import Router
from .stability import StabilityExperiment

# tag -> experiment class
EXPERIMENT_REGISTRY: Dict[str, Type[BaseExperiment]] = {
    cls.name: cls
    for cls in (
        DensityExperiment,
        StabilityExperiment,
        ResponseExperiment,
        LYCheckExperiment,
        CrimCheckExperiment,
        CounterexampleExperiment,
        LyapunovExperiment,
    )
}

__all__ = [
    "BaseExperiment",
    "CounterexampleExperiment",
    "CrimCheckExperiment",
    "DensityExperiment",
    "EXPERIMENT_REGISTRY",
    "LYCheckExperiment",
    "LyapunovExperiment",
    "ResponseExperiment",
    "Router",
    "StabilityExperiment",
]
