"""Derivative identity experiment: the G polynomials and their residuals."""

from ..config import ExperimentConfig
from ..dynamics import build_registry
from ..lasota_yorke import CORRECTED, PRINTED, g_polynomials, pretty, select_variant
from ..state import RunState
from .base_experiment import BaseExperiment

# Residual the selected recursion must reach
IDENTITY_TOL = 1e-7


class CrimCheckExperiment(BaseExperiment):
    """Both recursion variants against the numerical identity on one map."""

    name = "crim_check"
    title = "Derivative identity"

    def run(self, config: ExperimentConfig, state: RunState) -> None:
        registry = build_registry(config.maps)
        symbol = config.options["map"] or sorted(registry)[0]
        if symbol not in registry:
            raise ValueError(f"options.map '{symbol}' is not a configured symbol")
        circle_map = registry[symbol]
        eps = float(config.options["eps"])
        modes = int(config.options["modes"])

        residual_rows, polynomial_rows = [], []
        selected = {}
        for ell in (int(e) for e in config.options["ells"]):
            selection = select_variant(circle_map, eps, ell, modes=modes)
            selected[str(ell)] = selection.variant
            best = selection.residuals[selection.variant]
            residual_rows.append(
                {
                    "ell": ell,
                    "selected": selection.variant,
                    "residual_printed": selection.residuals[PRINTED],
                    "residual_corrected": selection.residuals[CORRECTED],
                }
            )
            if best > IDENTITY_TOL:
                self.flag(state, f"ell={ell}: best identity residual {best:.3e} exceeds {IDENTITY_TOL:g}")

            corrected = g_polynomials(ell, CORRECTED)
            printed = g_polynomials(ell, PRINTED)
            for j in range(ell + 1):
                polynomial_rows.append(
                    {"ell": ell, "j": j, "corrected": pretty(corrected[j]), "printed": pretty(printed[j])}
                )

        state["tables"]["identity_residuals"] = residual_rows
        state["tables"]["g_polynomials"] = polynomial_rows
        state["summary"] = {
            "experiment": self.name,
            "map": circle_map.name,
            "eps": eps,
            "selected": selected,
            "max_selected_residual": max(
                (r["residual_corrected"] if r["selected"] == CORRECTED else r["residual_printed"]) for r in residual_rows
            ),
        }
