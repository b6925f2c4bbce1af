"""Readers for the simulator's CSV output schemas.

Inputs are never modified; every loader validates the header against the
documented schema before parsing and raises SchemaError on mismatch.
"""

from __future__ import annotations

import csv
import sys
from pathlib import Path

import numpy as np

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

TRAJECTORY_COLUMNS = ["t", "polarization", "radicalization",
                      "n_components", "mean_opinion"]
OPINION_SERIES_COLUMNS = ["t", "node", "opinion"]
METRIC_FIELDS = ("polarization", "radicalization", "n_components", "mean_opinion")


class SchemaError(ValueError):
    """Input file does not match the documented CSV schema."""


def _read_rows(path: str | Path) -> tuple[list[str], list[dict[str, str]]]:
    path = Path(path)
    if not path.exists():
        raise SchemaError(f"input file not found: {path}")
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise SchemaError(f"{path}: empty file")
        rows = list(reader)
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return list(reader.fieldnames), rows


def _require(columns: list[str], needed: list[str], path) -> None:
    missing = [c for c in needed if c not in columns]
    if missing:
        raise SchemaError(f"{path}: missing column(s) {missing}, found {columns}")


def load_trajectory(path: str | Path) -> dict[str, np.ndarray]:
    columns, rows = _read_rows(path)
    _require(columns, TRAJECTORY_COLUMNS, path)
    return {c: np.array([float(r[c]) for r in rows]) for c in TRAJECTORY_COLUMNS}


def load_opinion_series(path: str | Path) -> tuple[np.ndarray, np.ndarray]:
    """Returns (times, opinions) with opinions shaped (n_times, n_nodes)."""
    columns, rows = _read_rows(path)
    _require(columns, OPINION_SERIES_COLUMNS, path)
    times = sorted({int(r["t"]) for r in rows})
    nodes = sorted({int(r["node"]) for r in rows})
    t_index = {t: i for i, t in enumerate(times)}
    n_index = {n: i for i, n in enumerate(nodes)}
    values = np.full((len(times), len(nodes)), np.nan)
    for r in rows:
        values[t_index[int(r["t"])], n_index[int(r["node"])]] = float(r["opinion"])
    if np.isnan(values).any():
        raise SchemaError(f"{path}: opinion series is not a complete t x node grid")
    return np.array(times), values


def load_sweep_cells(path: str | Path) -> tuple[list[str], dict[str, np.ndarray]]:
    """Returns (axis column names, column arrays) for a sweep_cells.csv.

    Axis columns are whatever precedes the first aggregate column; cells
    whose replicates all failed (empty aggregates) are rejected.
    """
    columns, rows = _read_rows(path)
    aggregates = [f"{f}_{s}" for f in METRIC_FIELDS for s in ("mean", "se")]
    _require(columns, aggregates, path)
    axes = columns[: columns.index(aggregates[0])]
    if not 1 <= len(axes) <= 2:
        raise SchemaError(f"{path}: expected 1 or 2 axis columns, found {axes}")
    failed = [r for r in rows if r.get("error")]
    if failed:
        raise SchemaError(f"{path}: {len(failed)} cell(s) carry errors; "
                          "re-run the sweep before plotting")
    data = {c: np.array([float(r[c]) for r in rows]) for c in axes + aggregates}
    return axes, data


def opinion_limit_from_config(path: str | Path) -> float:
    """K/(1-gamma) from a config.resolved echo, for symmetric color limits."""
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
        dyn = data["dynamics"]
        return float(dyn["k"]) / (1.0 - float(dyn["gamma"]))
    except (OSError, KeyError, ValueError, tomllib.TOMLDecodeError) as exc:
        raise SchemaError(f"cannot read opinion bound from {path}: {exc}")
