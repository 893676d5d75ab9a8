"""Utility modules for the quenched response toolkit."""

from .executor import ExecutionResult, TaskExecutor, task_rng
from .fitting import LinearFit, linear_fit, log_log_fit, tail_window
from .logger import get_logger, log_section, setup_logging
from .results import (
    RunRecord,
    config_hash,
    format_value,
    git_blob_digest,
    jsonable,
    persist_results,
    write_json,
    write_plot_data,
    write_table,
)

__all__ = [
    "ExecutionResult",
    "LinearFit",
    "RunRecord",
    "TaskExecutor",
    "config_hash",
    "format_value",
    "get_logger",
    "git_blob_digest",
    "jsonable",
    "linear_fit",
    "log_log_fit",
    "log_section",
    "persist_results",
    "setup_logging",
    "tail_window",
    "task_rng",
    "write_json",
    "write_plot_data",
    "write_table",
]
