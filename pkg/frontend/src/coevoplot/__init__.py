"""Figure rendering for coevonet simulation output files."""

from .io import (
    SchemaError,
    load_opinion_series,
    load_sweep_cells,
    load_trajectory,
    opinion_limit_from_config,
)
from .render import render_curves, render_heatmap, render_timeseries

__version__ = "0.1.0"

__all__ = [
    "SchemaError",
    "load_opinion_series",
    "load_sweep_cells",
    "load_trajectory",
    "opinion_limit_from_config",
    "render_curves",
    "render_heatmap",
    "render_timeseries",
]
