"""State definition for the experiment run workflow."""

from enum import Enum
from typing import Any, Dict, List, Literal, Optional, TypedDict


class RunStatus(str, Enum):
    """Enumeration of possible run statuses."""

    PENDING = "pending"
    OK = "ok"
    FLAGGED = "flagged"
    FAILED = "failed"


class RunState(TypedDict):
    """
    State that flows through the run workflow.

    Attributes:
        config_path: Path of the experiment config file
        raw_config: Text of the config file, hashed into the run record
        config: Resolved ExperimentConfig (None until validated)
        diagnostics: Schema violations found by the validate node
        tables: Table name -> list of rows (dicts with a fixed column order)
        summary: JSON-serializable summary of the experiment
        plots: Plot name -> list of (x, y) pairs for two-column data files
        flags: Non-fatal conditions (non-converged densities, truncations, ...)
        errors: Fatal errors
        record: Run record written by the persist node
        started: perf_counter() at run start
        status: Current run status
    """

    config_path: str
    raw_config: str
    config: Optional[Any]
    diagnostics: List[str]
    tables: Dict[str, List[Dict[str, Any]]]
    summary: Dict[str, Any]
    plots: Dict[str, List[List[float]]]
    flags: List[str]
    errors: List[str]
    record: Optional[Dict[str, Any]]
    started: float
    status: Literal["pending", "ok", "flagged", "failed"]
