#!/usr/bin/env python3
"""
Quenched Response Toolkit - Main Entry Point

Runs, validates and lists the configuration-driven experiments on random
expanding circle-map cocycles.

Usage:
    python main.py run <config> [--threads N]
    python main.py validate <config>
    python main.py list-families
"""

import argparse
import json
import sys
from typing import List, Optional

from src import __version__
from src.config import Settings, load_config
from src.dynamics import list_families
from src.state import RunStatus
from src.utils import get_logger, setup_logging
from src.workflow import WorkflowBuilder

# Exit codes
EXIT_OK = 0
EXIT_FAILED = 1
EXIT_FLAGGED = 2

_EXIT_CODES = {
    RunStatus.OK.value: EXIT_OK,
    RunStatus.FLAGGED.value: EXIT_FLAGGED,
    RunStatus.FAILED.value: EXIT_FAILED,
}


def print_banner(command: str) -> None:
    """Print the application banner."""
    print("\n" + "=" * 80)
    print(f"🌀 QUENCHED RESPONSE TOOLKIT v{__version__} - {command}")
    print("=" * 80)


def print_final_results(state: dict) -> None:
    """
    Print final run results.

    Args:
        state: Final workflow state
    """
    print("\n" + "=" * 80)
    print("📋 FINAL RESULTS")
    print("=" * 80)
    print(f"\nStatus: {state['status'].upper()}")
    if state.get("record"):
        print(f"Config hash: {state['record']['config_hash']}")
        print(f"Wall time: {state['record']['wall_time']:.2f}s")
    for flag in state["flags"]:
        print(f"  ⚠ {flag}")
    for error in state["errors"]:
        print(f"  ✗ {error}")
    print("\n" + "=" * 80)


def run_experiment(config_path: str, settings: Optional[Settings] = None, threads: Optional[int] = None) -> dict:
    """
    Run the complete workflow for one config file.

    Args:
        config_path: Path of the JSON experiment config
        settings: Optional settings (uses defaults from env if not provided)
        threads: Thread count overriding the config

    Returns:
        Final workflow state

    Raises:
        ValueError: If settings are invalid
    """
    if settings is None:
        settings = Settings.from_env()
    settings.validate()

    setup_logging(settings.log_level)
    logger = get_logger(__name__)
    logger.info(f"Running config {config_path}")

    builder = WorkflowBuilder(settings, threads=threads)
    workflow = builder.build()
    initial_state = builder.create_initial_state(config_path)

    logger.info("Executing workflow")
    final_state = workflow.invoke(initial_state)

    print_final_results(final_state)
    logger.info(f"Run completed with status: {final_state['status']}")
    return final_state


def validate_command(config_path: str, settings: Settings) -> int:
    """Check a config without running it; echo the resolved config when valid."""
    config, diagnostics, _ = load_config(config_path, settings)
    if config is None:
        for diagnostic in diagnostics:
            print(f"  ✗ {diagnostic}")
        return EXIT_FAILED
    print("ok")
    print(json.dumps(config.to_dict(), indent=2, sort_keys=True))
    return EXIT_OK


def list_families_command() -> int:
    """Print the registered map families with their parameter defaults."""
    for tag, defaults in list_families():
        params = ", ".join(f"{key}={value}" for key, value in defaults.items())
        print(f"{tag:<20} {params}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    """Command-line parser with run, validate and list-families commands."""
    parser = argparse.ArgumentParser(description="Quenched response experiments for random circle-map cocycles")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="run the experiment described by a config file")
    run.add_argument("config", help="path of the JSON config")
    run.add_argument("--threads", type=int, default=None, help="worker threads (overrides the config)")

    validate = commands.add_parser("validate", help="check a config file without running it")
    validate.add_argument("config", help="path of the JSON config")

    commands.add_parser("list-families", help="list the built-in map families")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Main entry point for the application.

    Returns:
        Exit code (0 ok, 2 ran with flags, 1 failed)
    """
    args = build_parser().parse_args(argv)

    try:
        if args.command == "list-families":
            return list_families_command()

        settings = Settings.from_env()
        settings.validate()

        if args.command == "validate":
            print_banner("VALIDATE")
            return validate_command(args.config, settings)

        if args.threads is not None and args.threads < 1:
            raise ValueError("--threads must be at least 1")
        print_banner("RUN")
        final_state = run_experiment(args.config, settings, threads=args.threads)
        return _EXIT_CODES.get(final_state["status"], EXIT_FAILED)

    except ValueError as e:
        print(f"❌ Configuration Error: {e}", file=sys.stderr)
        return EXIT_FAILED

    except Exception as e:
        print(f"❌ Unexpected Error: {e}", file=sys.stderr)
        import traceback

        traceback.print_exc()
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
