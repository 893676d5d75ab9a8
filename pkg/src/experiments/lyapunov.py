"""Expansion, top Lyapunov exponent, decay and backward boundedness along the window."""

from ..config import ExperimentConfig
from ..density import backward_boundedness, decay_rate, lyapunov_top, temperedness_diagnostic
from ..dynamics import expansion_report
from ..state import RunState
from .base_experiment import BaseExperiment

# Weight exponent a of the temperedness check on the derivative bounds
TEMPEREDNESS_WEIGHT = 0.1


class LyapunovExperiment(BaseExperiment):
    """Growth and decay rates of the transfer cocycle from one fiber."""

    name = "lyapunov"
    title = "Lyapunov exponent and decay of correlations"

    def run(self, config: ExperimentConfig, state: RunState) -> None:
        orbit = self.build_orbit(config)
        options = config.options
        fiber = int(options["fiber"])
        ell = int(options["ell"])
        eps = float(options["eps"])
        seed = config.driving["seed"]

        forward = min(int(options["n_max"]), orbit.hi - fiber)
        backward = min(int(options["n_max"]), fiber - orbit.lo)
        if forward < 4 or backward < 4:
            raise ValueError(f"fiber {fiber} leaves fewer than 4 steps of window on one side")

        expansion = expansion_report(orbit, eps)
        top = lyapunov_top(
            orbit, eps, ell, forward, int(options["trials"]), fiber, config.modes, config.quadrature, seed, self.cache
        )
        decay = decay_rate(
            orbit, eps, fiber, ell, forward, int(options["tests"]), config.modes, config.quadrature, seed, self.cache
        )
        bounded = backward_boundedness(
            orbit, fiber, ell, backward, eps, 4, config.modes, config.quadrature, seed, self.cache
        )
        tempered = temperedness_diagnostic(
            list(expansion.K_per_fiber), TEMPEREDNESS_WEIGHT, indices=list(expansion.fibers)
        )

        worst = [max(values) for values in zip(*decay.norms)]
        state["tables"]["decay"] = [{"n": n, "max_norm": v} for n, v in enumerate(worst)]
        state["tables"]["boundedness"] = [{"n": n, "norm": v} for n, v in enumerate(bounded.values)]
        state["tables"]["expansion"] = [
            {"fiber": n, "symbol": orbit.symbol(n), "lambda_min": lam, "K": K}
            for n, lam, K in zip(expansion.fibers, expansion.lambda_min_per_fiber, expansion.K_per_fiber)
        ]
        state["plots"]["decay"] = [[n, v] for n, v in enumerate(worst)]

        if not expansion.expanding:
            self.flag(state, f"window is not expanding on average (mean log lambda {expansion.mean_log_lambda:.4g})")
        if not decay.decaying:
            self.flag(state, f"no decay from fiber {fiber} (lambda_hat {decay.lambda_hat:.4g})")
        if not bounded.bounded:
            self.flag(state, f"pullback norms on fiber {fiber} grow")

        state["summary"] = {
            "experiment": self.name,
            "fiber": fiber,
            "ell": ell,
            "eps": eps,
            "mean_log_lambda": expansion.mean_log_lambda,
            "expanding": expansion.expanding,
            "lyapunov_top": top,
            "lambda_hat": decay.lambda_hat,
            "K_hat": decay.K_hat,
            "annihilated": decay.annihilated,
            "d_hat": bounded.d_hat,
            "bounded": bounded.bounded,
            "K_a": tempered.K_a,
            "sublinear_ok": tempered.sublinear_ok,
        }
