"""Base experiment class for all workflow experiment nodes."""

import math
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Sequence

from ..config import ExperimentConfig
from ..dynamics import DrivingOrbit, build_registry, sample_orbit
from ..operators import TransferCache
from ..spectral import FourierFunction
from ..state import RunState, RunStatus
from ..utils import get_logger, log_section


class BaseExperiment(ABC):
    """
    Abstract base class for all experiments in the run workflow.

    All experiments implement run(), which reads the resolved config and
    fills the state's tables, summary and plot data. process() wraps it
    with the banner, error capture and status bookkeeping.
    """

    name: str = ""
    title: str = ""

    def __init__(self):
        """Initialize the experiment with its own matrix cache."""
        self.logger = get_logger(self.__class__.__name__)
        self.cache = TransferCache()

    def process(self, state: RunState) -> RunState:
        """
        Run the experiment and update the state.

        Args:
            state: Current workflow state with a resolved config

        Returns:
            Updated workflow state
        """
        config: ExperimentConfig = state["config"]
        log_section(f"🔬 {self.name.upper()} - {self.title}")
        self.logger.info(f"Starting {self.name} experiment (M={config.modes}, threads={config.threads})")

        try:
            self.run(config, state)
        except ValueError as e:
            error = f"{type(e).__name__}: {e}"
            state["errors"].append(error)
            self.logger.error(f"{self.name} experiment failed: {error}")

        if state["errors"]:
            state["status"] = RunStatus.FAILED.value
        elif state["flags"]:
            state["status"] = RunStatus.FLAGGED.value
        else:
            state["status"] = RunStatus.OK.value
        self.logger.info(f"{self.name} finished with status {state['status']} (matrix cache: {len(self.cache)})")
        return state

    @abstractmethod
    def run(self, config: ExperimentConfig, state: RunState) -> None:
        """
        Compute the experiment's results into ``state``.

        Args:
            config: Resolved experiment configuration
            state: Workflow state to fill
        """
        pass

    def build_orbit(self, config: ExperimentConfig) -> DrivingOrbit:
        """Driving window described by the config."""
        registry = build_registry(config.maps)
        driving = config.driving
        return sample_orbit(driving["family"], driving["seed"], driving["window"], driving["params"], registry)

    def flag(self, state: RunState, message: str) -> None:
        """Record a non-fatal condition."""
        state["flags"].append(message)
        self.logger.warning(message)

    @staticmethod
    def coefficient_rows(f: FourierFunction, **labels: Any) -> List[Dict[str, Any]]:
        """Rows (labels..., k, re, im) for k = 0..M."""
        return [
            {**labels, "k": k, "re": f.coeff(k).real, "im": f.coeff(k).imag}
            for k in range(f.modes + 1)
        ]

    @staticmethod
    def rate_plot(eps_list: Sequence[float], errors: Sequence[float]) -> List[List[float]]:
        """log|eps| against log error, skipping vanishing errors."""
        return [[math.log(abs(e)), math.log(r)] for e, r in zip(eps_list, errors) if r > 0.0]
