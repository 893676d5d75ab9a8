"""State management for the experiment run workflow."""

from .run_state import RunState, RunStatus

__all__ = ["RunState", "RunStatus"]
