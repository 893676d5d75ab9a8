"""Suspension cocycle with a heavy-tailed roof: quenched response versus annealed divergence."""

from .experiment import (
    TABLE_COLUMNS,
    AnnealedTable,
    GrowthComparison,
    QuenchedResponse,
    annealed_divergence_experiment,
    appendix_orbit,
    compare_growth_models,
    covering_time_law,
    exact_truncated_mean,
    quenched_response_value,
)
from .observable import PsiObservable, arcs_overlap, make_psi
from .sampling import SuspensionState, ZetaLaw, sample_heights, sample_suspension, zeta_law

__all__ = [
    "AnnealedTable",
    "GrowthComparison",
    "PsiObservable",
    "QuenchedResponse",
    "SuspensionState",
    "TABLE_COLUMNS",
    "ZetaLaw",
    "annealed_divergence_experiment",
    "appendix_orbit",
    "arcs_overlap",
    "compare_growth_models",
    "covering_time_law",
    "exact_truncated_mean",
    "make_psi",
    "quenched_response_value",
    "sample_heights",
    "sample_suspension",
    "zeta_law",
]
