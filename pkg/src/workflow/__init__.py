"""Workflow orchestration for experiment runs."""

from .graph_builder import WorkflowBuilder

__all__ = ["WorkflowBuilder"]
