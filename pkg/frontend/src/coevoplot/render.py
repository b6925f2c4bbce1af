"""Figure renderers for simulator output: parameter-plane heatmaps, per-node
opinion timeseries, and polarization/radicalization curves."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .io import (
    METRIC_FIELDS,
    SchemaError,
    load_opinion_series,
    load_sweep_cells,
    opinion_limit_from_config,
)

_AXIS_LABELS = {
    "joint": r"similarity strength ($\eta=\beta$)",
    "eta": r"structural strength $\eta$",
    "beta": r"opinion strength $\beta$",
    "rho": r"opinion-similarity weight $\rho$",
}


def _label(name: str) -> str:
    return _AXIS_LABELS.get(name, name)


def _check_field(field: str) -> str:
    if field not in METRIC_FIELDS:
        raise SchemaError(f"unknown metric field {field!r}, "
                          f"choose one of {METRIC_FIELDS}")
    return f"{field}_mean"


def render_heatmap(input_path: str | Path, field: str, output_path: str | Path) -> None:
    """Mean of one metric over a two-axis sweep grid; the rho axis is drawn
    vertically, the similarity-strength axis horizontally."""
    column = _check_field(field)
    axes, data = load_sweep_cells(input_path)
    if len(axes) != 2:
        raise SchemaError(f"{input_path}: a heatmap needs a two-axis sweep, "
                          f"found axes {axes}")
    # rho vertical when present, otherwise keep file order
    y_name, x_name = (axes[1], axes[0]) if axes[1] == "rho" or axes[0] != "rho" \
        else (axes[0], axes[1])
    x_vals = np.unique(data[x_name])
    y_vals = np.unique(data[y_name])
    grid = np.full((y_vals.size, x_vals.size), np.nan)
    xi = np.searchsorted(x_vals, data[x_name])
    yi = np.searchsorted(y_vals, data[y_name])
    grid[yi, xi] = data[column]
    if np.isnan(grid).any():
        raise SchemaError(f"{input_path}: sweep cells do not fill the "
                          f"{x_name} x {y_name} grid")

    fig, ax = plt.subplots(figsize=(6, 4.5))
    mesh = ax.pcolormesh(x_vals, y_vals, grid, shading="nearest", cmap="viridis")
    fig.colorbar(mesh, ax=ax, label=f"mean {field.replace('_', ' ')}")
    ax.set_xticks(x_vals)
    ax.set_yticks(y_vals)
    ax.set_xlabel(_label(x_name))
    ax.set_ylabel(_label(y_name))
    fig.tight_layout()
    fig.savefig(output_path)
    plt.close(fig)


def render_timeseries(
    input_path: str | Path,
    output_path: str | Path,
    config_echo: str | Path | None = None,
) -> None:
    """One line per node, colored by its final opinion on a diverging scale
    centered at zero, with the population mean dashed on top."""
    times, values = load_opinion_series(input_path)
    limit = (opinion_limit_from_config(config_echo) if config_echo
             else float(np.abs(values).max()) or 1.0)
    cmap = plt.get_cmap("coolwarm")
    norm = matplotlib.colors.Normalize(vmin=-limit, vmax=limit)

    fig, ax = plt.subplots(figsize=(6, 4))
    for node in range(values.shape[1]):
        ax.plot(times, values[:, node], lw=0.6, alpha=0.7,
                color=cmap(norm(values[-1, node])))
    ax.plot(times, values.mean(axis=1), "k--", lw=1.5, label="population mean")
    ax.set_xlabel("t")
    ax.set_ylabel("opinion")
    ax.set_ylim(-1.05 * limit, 1.05 * limit)
    ax.legend(loc="upper left", frameon=False)
    fig.colorbar(matplotlib.cm.ScalarMappable(norm=norm, cmap=cmap),
                 ax=ax, label="final opinion")
    fig.tight_layout()
    fig.savefig(output_path)
    plt.close(fig)


def render_curves(input_path: str | Path, output_path: str | Path) -> None:
    """Polarization (solid) and radicalization (dashed) against rho, one
    color per value of the secondary axis; interior radicalization minima
    are marked."""
    axes, data = load_sweep_cells(input_path)
    if "rho" not in axes:
        raise SchemaError(f"{input_path}: curves need a rho axis, found {axes}")
    group_name = next((a for a in axes if a != "rho"), None)
    groups = np.unique(data[group_name]) if group_name else [None]
    cmap = plt.get_cmap("viridis")

    fig, ax = plt.subplots(figsize=(6, 4))
    for gi, group in enumerate(groups):
        mask = np.ones(data["rho"].size, dtype=bool) if group is None \
            else data[group_name] == group
        order = np.argsort(data["rho"][mask])
        rho = data["rho"][mask][order]
        pol = data["polarization_mean"][mask][order]
        rad = data["radicalization_mean"][mask][order]
        color = cmap(gi / max(1, len(groups) - 1)) if len(groups) > 1 else "C0"
        name = f"{group_name}={group:g}" if group is not None else "polarization"
        ax.plot(rho, pol, "-", color=color, label=name)
        ax.plot(rho, rad, "--", color=color)
        dip = int(np.argmin(rad))
        if 0 < dip < rho.size - 1:
            ax.plot(rho[dip], rad[dip], "v", color=color, ms=7)
            ax.annotate(f"min {rad[dip]:.2f}", (rho[dip], rad[dip]),
                        textcoords="offset points", xytext=(4, -12),
                        fontsize=8, color=color)
    ax.set_xlabel(_label("rho"))
    ax.set_ylabel("polarization (solid), radicalization (dashed)")
    ax.legend(fontsize=8, frameon=False)
    fig.tight_layout()
    fig.savefig(output_path)
    plt.close(fig)
