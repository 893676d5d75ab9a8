"""LangGraph workflow builder for experiment runs."""

import time
from pathlib import Path
from typing import Optional

from langgraph.graph import END, StateGraph

from .. import __version__
from ..config import Settings, load_config
from ..experiments import EXPERIMENT_REGISTRY, Router
from ..state import RunState, RunStatus
from ..utils import RunRecord, config_hash, get_logger, git_blob_digest, log_section, persist_results, write_json

logger = get_logger(__name__)


class WorkflowBuilder:
    """
    Builder class for constructing the run workflow.

    This class creates the graph that validates a config, dispatches it to
    its experiment and persists the results.
    """

    def __init__(self, settings: Optional[Settings] = None, threads: Optional[int] = None):
        """
        Initialize the workflow builder.

        Args:
            settings: Application settings (defaults for modes, tol, threads, output)
            threads: Thread count overriding the config file
        """
        self.settings = settings or Settings()
        self.threads = threads
        self.router = Router(EXPERIMENT_REGISTRY)

    def validate(self, state: RunState) -> RunState:
        """Load and check the config file."""
        log_section("📋 VALIDATE - Experiment configuration")
        config, diagnostics, text = load_config(state["config_path"], self.settings)
        state["raw_config"] = text
        state["diagnostics"] = [str(d) for d in diagnostics]
        if config is None:
            for line in state["diagnostics"]:
                print(f"  ✗ {line}")
            state["errors"].append(f"config has {len(diagnostics)} problem(s)")
            state["status"] = RunStatus.FAILED.value
            return state

        if self.threads is not None:
            config.threads = self.threads
        print(f"  ✓ {config.experiment} experiment, output to {config.output}")
        logger.info(f"Validated config {state['config_path']} ({config.experiment})")
        state["config"] = config
        return state

    def persist(self, state: RunState) -> RunState:
        """Write tables, summary, plot data and the run record."""
        log_section("💾 PERSIST - Writing results")
        config = state["config"]
        summary = {**state["summary"], "status": state["status"], "flags": state["flags"], "errors": state["errors"]}
        paths = persist_results(config.output, state["tables"], summary, state["plots"])

        record = RunRecord(
            experiment=config.experiment,
            config_hash=config_hash(config.to_dict()),
            input_digest=git_blob_digest(state["raw_config"]),
            wall_time=time.perf_counter() - state["started"],
            tables=paths,
            tool_version=__version__,
            status=state["status"],
            flags=list(state["flags"]),
        )
        write_json(Path(config.output) / "run_record.json", record.to_dict())
        state["record"] = record.to_dict()
        for name, path in paths.items():
            print(f"  {name}: {path}")
        return state

    def build(self) -> StateGraph:
        """
        Build and compile the run workflow graph.

        Returns:
            Compiled StateGraph ready for execution

        The workflow structure:
            START → validate → [Router] → <experiment> → persist → END
                                   |
                                   +--- (invalid) → END
        """
        logger.info("Building workflow graph")

        workflow = StateGraph(RunState)
        workflow.add_node("validate", self.validate)
        workflow.add_node("persist", self.persist)
        for tag, experiment_class in EXPERIMENT_REGISTRY.items():
            workflow.add_node(tag, experiment_class().process)
            workflow.add_edge(tag, "persist")

        workflow.set_entry_point("validate")
        workflow.add_conditional_edges(
            "validate",
            self.router.route,
            {**{tag: tag for tag in EXPERIMENT_REGISTRY}, "end": END},
        )
        workflow.add_edge("persist", END)

        logger.info("Workflow graph built successfully")
        return workflow.compile()

    def create_initial_state(self, config_path: str) -> RunState:
        """
        Create initial state for workflow execution.

        Args:
            config_path: Path of the experiment config

        Returns:
            Initial RunState ready for workflow execution
        """
        return RunState(
            config_path=str(config_path),
            raw_config="",
            config=None,
            diagnostics=[],
            tables={},
            summary={},
            plots={},
            flags=[],
            errors=[],
            record=None,
            started=time.perf_counter(),
            status=RunStatus.PENDING.value,
        )
