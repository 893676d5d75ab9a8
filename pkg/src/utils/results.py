"""Result files: CSV tables, JSON summaries, plot data and the run record."""

import csv
import hashlib
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence

import numpy as np

from .logger import get_logger

logger = get_logger(__name__)


def format_value(value: Any) -> str:
    """CSV cell text; floats keep 17 significant digits."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def jsonable(value: Any) -> Any:
    """Recursively convert numpy scalars, tuples and non-finite floats for JSON."""
    if isinstance(value, Mapping):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [jsonable(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        number = float(value)
        return number if math.isfinite(number) else str(number)
    return value


def write_table(path: Path, rows: Sequence[Mapping[str, Any]], columns: Optional[Sequence[str]] = None) -> Path:
    """
    Write rows as CSV; the column order is ``columns`` or the first row's keys.

    Args:
        path: Output file
        rows: Table rows
        columns: Explicit column order

    Returns:
        The written path
    """
    header = list(columns) if columns is not None else (list(rows[0]) if rows else [])
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(row.get(column)) for column in header])
    logger.debug(f"Wrote {len(rows)} rows to {path}")
    return path


def write_json(path: Path, data: Any) -> Path:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(jsonable(data), handle, indent=2, sort_keys=True)
        handle.write("\n")
    return path


def write_plot_data(path: Path, pairs: Iterable[Sequence[float]], labels: Sequence[str] = ("x", "y")) -> Path:
    """Two-column whitespace-separated data with a commented header."""
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(f"# {labels[0]} {labels[1]}\n")
        for x, y in pairs:
            handle.write(f"{format_value(x)} {format_value(y)}\n")
    return path


def git_blob_digest(text: str) -> str:
    """SHA-1 of ``text`` as git stores it in a blob object."""
    data = text.encode("utf-8")
    return hashlib.sha1(b"blob %d\0" % len(data) + data).hexdigest()


def config_hash(resolved: Mapping[str, Any]) -> str:
    """SHA-256 of the canonical JSON form of a resolved config."""
    canonical = json.dumps(jsonable(resolved), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


@dataclass
class RunRecord:
    """
    Provenance of one run.

    Attributes:
        experiment: Experiment tag
        config_hash: SHA-256 of the resolved config
        input_digest: git blob SHA-1 of the raw config text
        wall_time: Seconds spent in the run
        tables: Table name -> file path
        tool_version: Package version
        status: Final run status
        flags: Non-fatal conditions raised during the run
    """

    experiment: str
    config_hash: str
    input_digest: str
    wall_time: float
    tables: Dict[str, str] = field(default_factory=dict)
    tool_version: str = ""
    status: str = "ok"
    flags: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def persist_results(
    output_dir: str,
    tables: Mapping[str, Sequence[Mapping[str, Any]]],
    summary: Mapping[str, Any],
    plots: Mapping[str, Sequence[Sequence[float]]],
) -> Dict[str, str]:
    """
    Write every table, the summary and the plot data under ``output_dir``.

    Returns:
        Table name -> CSV path
    """
    directory = Path(output_dir)
    directory.mkdir(parents=True, exist_ok=True)

    paths = {}
    for name in sorted(tables):
        paths[name] = str(write_table(directory / f"{name}.csv", tables[name]))
    write_json(directory / "summary.json", summary)
    for name in sorted(plots):
        write_plot_data(directory / f"{name}.dat", plots[name])
    logger.info(f"Wrote {len(paths)} table(s) and {len(plots)} plot file(s) to {directory}")
    return paths
