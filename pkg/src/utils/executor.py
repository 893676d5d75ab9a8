"""Deterministic parallel execution of independent numerical tasks."""

from dataclasses import dataclass
from typing import Any, Callable, Hashable, List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from .logger import get_logger

logger = get_logger(__name__)


@dataclass
class ExecutionResult:
    """
    Result of one task execution.

    Attributes:
        key: Stable task key (fiber index, epsilon, block number, ...)
        success: Whether the task completed without raising
        output: Return value of the task when it succeeded
        error: Error message if the task failed
    """

    key: Hashable
    success: bool
    output: Any = None
    error: Optional[str] = None


class TaskExecutor:
    """
    Runs keyed tasks on a thread pool and returns results in input order.

    Results never depend on the worker count: every task receives the same
    arguments regardless of which worker runs it, and the output list follows
    the order of the submitted keys.
    """

    def __init__(self, threads: int = 1):
        """
        Initialize the executor.

        Args:
            threads: Number of worker threads (1 runs inline)
        """
        if threads < 1:
            raise ValueError("threads must be at least 1")
        self.threads = threads

    @staticmethod
    def execute(key: Hashable, func: Callable[..., Any], *args: Any) -> ExecutionResult:
        """
        Execute a single task, capturing any exception as a failed result.

        Args:
            key: Task key recorded in the result
            func: Callable to run
            *args: Positional arguments for the callable

        Returns:
            ExecutionResult with success status, output and error
        """
        try:
            output = func(*args)
            return ExecutionResult(key=key, success=True, output=output)
        except Exception as e:
            error = f"{type(e).__name__}: {str(e)}"
            logger.error(f"Task {key!r} failed: {error}")
            return ExecutionResult(key=key, success=False, error=error)

    def map(
        self,
        func: Callable[..., Any],
        tasks: Sequence[Tuple[Hashable, Tuple[Any, ...]]],
    ) -> List[ExecutionResult]:
        """
        Run ``func(*args)`` for every ``(key, args)`` task.

        Args:
            func: Callable applied to each task's arguments
            tasks: Sequence of (key, args) pairs

        Returns:
            ExecutionResults in the order of ``tasks``
        """
        logger.debug(f"Running {len(tasks)} tasks on {self.threads} thread(s)")
        if self.threads == 1 or len(tasks) <= 1:
            return [self.execute(key, func, *args) for key, args in tasks]

        return Parallel(n_jobs=self.threads, backend="threading")(
            delayed(self.execute)(key, func, *args) for key, args in tasks
        )


def task_rng(seed: int, *key: int) -> np.random.Generator:
    """
    Random generator for one task, derived from the master seed and a key.

    The same (seed, key) pair always yields the same stream, independent of
    how many tasks or workers exist.

    Args:
        seed: Master seed
        *key: Non-negative integers identifying the task

    Returns:
        Independent numpy Generator
    """
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=tuple(int(k) for k in key))
    return np.random.default_rng(sequence)
