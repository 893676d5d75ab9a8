"""Statistical stability experiment."""

from ..config import ExperimentConfig
from ..response import FitRefusedError, stability_rate
from ..state import RunState
from .base_experiment import BaseExperiment


class StabilityExperiment(BaseExperiment):
    """Rate of ||h_eps - h_0|| against |eps| on one fiber."""

    name = "stability"
    title = "Statistical stability"

    def run(self, config: ExperimentConfig, state: RunState) -> None:
        orbit = self.build_orbit(config)
        fiber = int(config.options["fiber"])
        ell = int(config.options["ell"])

        try:
            fit = stability_rate(
                orbit, fiber, config.eps_grid, ell, config.tol, config.modes, config.quadrature, config.threads, self.cache
            )
        except FitRefusedError as e:
            self.flag(state, f"stability fit refused: {e}")
            state["summary"] = {"experiment": self.name, "fiber": fiber, "refused": str(e)}
            return

        state["tables"]["stability"] = [{"eps": e, "error": r} for e, r in zip(fit.eps_list, fit.errors)]
        state["plots"]["stability_rate"] = self.rate_plot(fit.eps_list, fit.errors)
        state["summary"] = {
            "experiment": self.name,
            "fiber": fiber,
            "ell": ell,
            "fitted_exponent": fit.fitted_exponent,
            "fitted_prefactor": fit.fitted_prefactor,
            "r_squared": fit.r_squared,
            "exact": fit.exact,
        }
