"""Router for run workflow control flow decisions."""

from typing import Sequence

from ..state import RunState, RunStatus
from ..utils import get_logger

logger = get_logger(__name__)


class Router:
    """
    Router that dispatches a validated run to its experiment node.

    Runs whose config failed validation go straight to the end of the
    workflow.
    """

    def __init__(self, experiments: Sequence[str]):
        """
        Initialize the router.

        Args:
            experiments: Experiment tags that have a node in the graph
        """
        self.experiments = tuple(experiments)

    def route(self, state: RunState) -> str:
        """
        Decide the next node after validation.

        Args:
            state: Current workflow state

        Returns:
            The experiment tag, or "end" for an invalid config
        """
        if state["status"] == RunStatus.FAILED.value or state["config"] is None:
            print("\n" + "=" * 80)
            print(f"❌ INVALID CONFIG - {len(state['diagnostics'])} problem(s)")
            print("=" * 80)
            logger.warning("Config failed validation, stopping workflow")
            return "end"

        experiment = state["config"].experiment
        if experiment not in self.experiments:
            state["errors"].append(f"no node for experiment '{experiment}'")
            state["status"] = RunStatus.FAILED.value
            logger.error(f"No node registered for experiment '{experiment}'")
            return "end"

        print("\n" + "=" * 80)
        print(f"🔀 Routing to the {experiment} experiment")
        print("=" * 80)
        logger.info(f"Routing to experiment {experiment}")
        return experiment
