"""Suspension counterexample: quenched response against the annealed average."""

import math

from ..config import ExperimentConfig
from ..state import RunState
from ..suspension import TABLE_COLUMNS, annealed_divergence_experiment, quenched_response_value, sample_suspension
from .base_experiment import BaseExperiment

# Agreement required between the closed-form and operator routes
ROUTE_TOL = 1e-5


class CounterexampleExperiment(BaseExperiment):
    """Truncated annealed means, tail law and per-sample route agreement."""

    name = "counterexample"
    title = "Annealed divergence of the quenched response"

    def run(self, config: ExperimentConfig, state: RunState) -> None:
        options = config.options
        delta = float(options["delta"])
        seed = int(options["seed"])

        table = annealed_divergence_experiment(
            seed, delta, options["sample_sizes"], options["caps"], threads=config.threads
        )
        state["tables"]["counterexample"] = [{c: row[c] for c in TABLE_COLUMNS} for row in table.rows]
        state["tables"]["tail_law"] = list(table.tail_law)

        largest = max(table.slopes)
        final_rows = [row for row in table.rows if row["sample_size"] == largest]
        means = [row["truncated_mean"] for row in final_rows]
        state["plots"]["truncated_mean"] = [
            [math.log(row["cap"]), math.log(row["truncated_mean"])] for row in final_rows
        ]

        outside = [row["N"] for row in table.tail_law if abs(row["empirical"] - row["exact"]) > 3.0 * row["sigma"]]
        increasing = all(b > a for a, b in zip(means, means[1:]))
        if not increasing:
            self.flag(state, "truncated means are not strictly increasing in the cap")

        routes = []
        samples = int(options["operator_samples"])
        if samples > 0:
            for state_k in sample_suspension(seed, delta, samples):
                closed = quenched_response_value(state_k, "closed_form")
                operator = quenched_response_value(
                    state_k, "operator", modes=int(options["operator_modes"]), cache=self.cache
                )
                difference = abs(operator.value - closed.value)
                routes.append(
                    {
                        "omega0": state_k.omega0,
                        "i": state_k.i,
                        "closed_form": closed.value,
                        "operator": operator.value,
                        "difference": difference,
                        "truncated": operator.truncated,
                    }
                )
                if difference > ROUTE_TOL or operator.truncated:
                    self.flag(state, f"routes disagree at omega0={state_k.omega0}, i={state_k.i}: {difference:.3e}")
            state["tables"]["quenched_routes"] = routes

        state["summary"] = {
            "experiment": self.name,
            "delta": delta,
            "sample_size": largest,
            "fitted_slope": table.slopes[largest],
            "expected_slope": 1.0 - delta,
            "log_r_squared": table.comparison.log_r_squared,
            "power_r_squared": table.comparison.power_r_squared,
            "preferred_growth": table.comparison.preferred,
            "max_sample": max(row["max_sample"] for row in final_rows),
            "means_increasing": increasing,
            "tail_law_outside_3sigma": outside,
            "max_route_difference": max((r["difference"] for r in routes), default=None),
        }
