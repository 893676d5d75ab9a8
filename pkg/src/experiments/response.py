"""Linear response experiment."""

from typing import Optional

import numpy as np

from ..config import ExperimentConfig
from ..dynamics import DrivingOrbit, make_observable
from ..response import FitRefusedError, koopman_observable_response, response_series, response_validation
from ..spectral import FourierFunction, sobolev_norm
from ..state import RunState
from .base_experiment import BaseExperiment

# W^{1,1} distance below which h_hat matches its closed form
CLOSED_FORM_TOL = 1e-8


def _closed_form(orbit: DrivingOrbit, modes: int) -> Optional[FourierFunction]:
    """
    psi when every fiber is D_eps o (2x) with psi carrying only odd modes, else None.

    The doubling operator annihilates odd modes, so only the n = 0 term survives.
    """
    psis = []
    for circle_map in orbit.registry.values():
        psi = circle_map.metadata.get("psi")
        if psi is None or circle_map.params.get("beta") != 2:
            return None
        psis.append(psi.resize(modes))
    first = psis[0]
    if any(np.max(np.abs(p.coeffs - first.coeffs)) > 0.0 for p in psis):
        return None
    even = np.arange(-modes, modes + 1) % 2 == 0
    if np.any(first.coeffs[even] != 0.0):
        return None
    return first


class ResponseExperiment(BaseExperiment):
    """Response series, difference-quotient rate and observable cross-checks."""

    name = "response"
    title = "Linear response"

    def run(self, config: ExperimentConfig, state: RunState) -> None:
        orbit = self.build_orbit(config)
        options = config.options
        fiber = int(options["fiber"])
        ell = int(options["ell"])
        tol = float(options["density_tol"])
        observable = make_observable(options["observable"], config.modes)

        response = response_series(
            orbit,
            fiber,
            depth=options["depth"],
            observable=observable,
            modes=config.modes,
            quadrature=config.quadrature,
            tol=tol,
            cache=self.cache,
        )
        koopman = koopman_observable_response(
            orbit, fiber, observable, response.series_depth, None, config.modes, config.quadrature, tol, self.cache
        )

        summary = {
            "experiment": self.name,
            "fiber": fiber,
            "series_depth": response.series_depth,
            "tail_estimate": response.tail_estimate,
            "mean_h_hat": response.h_hat.mean,
            "observable_response": response.observable_response,
            "koopman_response": koopman,
            "routes_agree": abs(koopman - response.observable_response) <= 1e-8,
        }

        closed = _closed_form(orbit, config.modes)
        if closed is not None:
            distance = sobolev_norm(response.h_hat - closed, 1, config.quadrature)
            summary["closed_form_error"] = distance
            summary["closed_form_match"] = distance <= CLOSED_FORM_TOL

        state["tables"]["response_terms"] = [{"n": n, "norm": v} for n, v in enumerate(response.term_norms)]
        state["tables"]["response_coefficients"] = self.coefficient_rows(response.h_hat, fiber=fiber)

        try:
            validation = response_validation(
                orbit,
                fiber,
                config.eps_grid,
                ell,
                observable,
                response,
                tol,
                config.modes,
                config.quadrature,
                config.threads,
                self.cache,
            )
        except FitRefusedError as e:
            self.flag(state, f"response fit refused: {e}")
            summary["refused"] = str(e)
            state["summary"] = summary
            return

        fit = validation.fit
        state["tables"]["response_errors"] = [{"eps": e, "error": r} for e, r in zip(fit.eps_list, fit.errors)]
        state["plots"]["response_rate"] = self.rate_plot(fit.eps_list, fit.errors)
        summary.update(
            {
                "fitted_exponent": fit.fitted_exponent,
                "fitted_prefactor": fit.fitted_prefactor,
                "r_squared": fit.r_squared,
                "exact": fit.exact,
                "observable_fd": validation.observable_fd,
            }
        )
        if abs(response.h_hat.mean) > 1e-9:
            self.flag(state, f"response mean {response.h_hat.mean:.3e} is not zero")
        state["summary"] = summary

