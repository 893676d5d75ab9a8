"""Equivariant density experiment."""

from ..config import ExperimentConfig
from ..density import equivariant_density
from ..state import RunState
from ..utils import TaskExecutor
from .base_experiment import BaseExperiment


class DensityExperiment(BaseExperiment):
    """Pullback densities on the configured fibers and eps values."""

    name = "density"
    title = "Equivariant densities"

    def run(self, config: ExperimentConfig, state: RunState) -> None:
        orbit = self.build_orbit(config)
        eps_values = config.eps_grid or [0.0]
        fibers = [int(n) for n in config.options["fibers"]]
        ell_check = int(config.options["ell_check"])

        tasks = [
            ((fiber, eps), (orbit, eps, fiber, ell_check, config.tol, config.modes, config.quadrature, None, None, self.cache))
            for fiber in fibers
            for eps in eps_values
        ]
        results = TaskExecutor(config.threads).map(equivariant_density, tasks)

        rows, coefficients = [], []
        for result in results:
            fiber, eps = result.key
            if not result.success:
                self.flag(state, f"density on fiber {fiber} at eps={eps} failed: {result.error}")
                rows.append({"fiber": fiber, "eps": eps, "converged": False, "error": result.error})
                continue
            density = result.output
            rows.append(
                {
                    "fiber": fiber,
                    "eps": eps,
                    "pullback_depth": density.pullback_depth,
                    "defect": density.cauchy_defect,
                    "converged": density.converged,
                    "mass": density.h.mean,
                    "min_value": density.min_value,
                    "positive": density.positive,
                    "error": "",
                }
            )
            coefficients += self.coefficient_rows(density.h, fiber=fiber, eps=eps)
            state["plots"][f"defects_fiber{fiber}_eps{eps:g}"] = [
                [n + 1, d] for n, d in enumerate(density.defects)
            ]
            if not density.converged:
                self.flag(state, f"density on fiber {fiber} at eps={eps} not converged (defect {density.cauchy_defect:.3e})")
            if not density.positive:
                self.flag(state, f"density on fiber {fiber} at eps={eps} dips to {density.min_value:.3e}")

        state["tables"]["density"] = rows
        state["tables"]["density_coefficients"] = coefficients
        converged = [r for r in rows if r.get("converged")]
        state["summary"] = {
            "experiment": self.name,
            "densities": len(rows),
            "all_converged": len(converged) == len(rows),
            "max_defect": max((r["defect"] for r in converged), default=None),
            "max_mass_error": max((abs(r["mass"] - 1.0) for r in converged), default=None),
        }
