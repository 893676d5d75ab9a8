"""Configuration module for the quenched response toolkit."""

from .experiment import EXPERIMENTS, OPTION_DEFAULTS, Diagnostic, ExperimentConfig, load_config, parse_config
from .settings import Settings

__all__ = [
    "Diagnostic",
    "EXPERIMENTS",
    "ExperimentConfig",
    "OPTION_DEFAULTS",
    "Settings",
    "load_config",
    "parse_config",
]
