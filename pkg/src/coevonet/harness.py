"""Parameter sweeps: grid construction, deterministic per-replicate seeding,
optional process parallelism, and replicate aggregation.

Each grid cell runs R independent simulations whose seeds are stable hashes
of (seed_base, the cell's parameter assignment, replicate index) -- adding or
reordering grid values never changes the seeds of existing cells, and results
are merged by cell index, so a sweep is deterministic at any worker count.
"""

from __future__ import annotations

import dataclasses
import hashlib
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path

from .engine import SimConfig, simulate

WORKERS_ENV_VAR = "COEVONET_WORKERS"

# "joint" drives the eta = beta diagonal used by the two-similarity heatmaps.
_AXIS_NAMES = (
    "joint", "rho", "eta", "beta", "epsilon",
    "k", "gamma", "alpha", "mean_degree", "t_max",
)


def bind_value(cfg: SimConfig, name: str, value) -> SimConfig:
    """Return a copy of cfg with one named parameter set; "joint" sets both
    similarity exponents eta and beta to the same value."""
    if name == "joint":
        rec = dataclasses.replace(cfg.recommender, eta=value, beta=value)
        return dataclasses.replace(cfg, recommender=rec)
    if name in ("rho", "eta", "beta", "epsilon"):
        rec = dataclasses.replace(cfg.recommender, **{name: value})
        return dataclasses.replace(cfg, recommender=rec)
    if name in ("k", "gamma", "alpha"):
        dyn = dataclasses.replace(cfg.dynamics, **{name: value})
        return dataclasses.replace(cfg, dynamics=dyn)
    if name == "mean_degree":
        return dataclasses.replace(cfg, mean_degree=value)
    if name == "t_max":
        return dataclasses.replace(cfg, t_max=int(value))
    raise ValueError(f"unknown sweep parameter {name!r} (known: {_AXIS_NAMES})")


@dataclass(frozen=True)
class SweepSpec:
    base: SimConfig
    axes: dict[str, tuple[float, ...]]  # insertion order fixes cell order
    replicates: int = 10
    seed_base: int = 0

    def validate(self) -> None:
        if self.replicates < 1:
            raise ValueError(f"replicates={self.replicates} must be >= 1")
        if not 1 <= len(self.axes) <= 2:
            raise ValueError(f"need 1 or 2 axes, got {len(self.axes)}")
        for name, values in self.axes.items():
            if name not in _AXIS_NAMES:
                raise ValueError(f"unknown axis {name!r} (known: {_AXIS_NAMES})")
            if len(values) == 0:
                raise ValueError(f"axis {name!r} has no values")
        if "joint" in self.axes and ("eta" in self.axes or "beta" in self.axes):
            raise ValueError("the joint eta=beta axis conflicts with an "
                             "independent eta or beta axis")
        self.base.validate()

    def cells(self) -> list[dict[str, float]]:
        names = list(self.axes)
        return [dict(zip(names, combo))
                for combo in product(*(self.axes[n] for n in names))]


def cell_seed(seed_base: int, params: dict[str, float], replicate: int) -> int:
    """Stable 63-bit seed from the cell's parameter assignment."""
    key = "|".join(
        [str(seed_base)]
        + [f"{k}={params[k]!r}" for k in sorted(params)]
        + [f"rep={replicate}"]
    )
    digest = hashlib.sha256(key.encode()).digest()
    return int.from_bytes(digest[:8], "big") >> 1


FINAL_FIELDS = ("polarization", "radicalization", "n_components", "mean_opinion")


@dataclass
class CellResult:
    params: dict[str, float]
    seeds: list[int]
    finals: list[tuple[float, float, int, float]]  # per replicate, FINAL_FIELDS
    error: str | None = None

    def mean(self, i: int) -> float:
        return sum(f[i] for f in self.finals) / len(self.finals)

    def stderr(self, i: int) -> float:
        r = len(self.finals)
        if r < 2:
            return 0.0
        mu = self.mean(i)
        var = sum((f[i] - mu) ** 2 for f in self.finals) / (r - 1)
        return math.sqrt(var / r)


@dataclass
class SweepResult:
    spec: SweepSpec
    cells: list[CellResult] = field(default_factory=list)


def _replicate_cfg(spec: SweepSpec, params: dict[str, float], r: int) -> SimConfig:
    cfg = spec.base
    for name, value in params.items():
        cfg = bind_value(cfg, name, value)
    return dataclasses.replace(cfg, seed=cell_seed(spec.seed_base, params, r))


def _run_one(cfg: SimConfig) -> tuple[float, float, int, float]:
    traj = simulate(cfg)
    last = traj.rows[-1]
    return (last.polarization, last.radicalization,
            last.n_components, last.mean_opinion)


def default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV_VAR, "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_sweep(spec: SweepSpec, parallelism: int | None = None) -> SweepResult:
    """Run every (cell, replicate) simulation and aggregate per cell.

    A failing replicate marks its whole cell as errored instead of aborting
    the sweep. Results are identical for any worker count.
    """
    spec.validate()
    workers = default_workers() if parallelism is None else max(1, parallelism)
    cells = spec.cells()
    tasks = [
        (ci, r, _replicate_cfg(spec, params, r))
        for ci, params in enumerate(cells)
        for r in range(spec.replicates)
    ]

    outcomes: dict[tuple[int, int], tuple | str] = {}
    if workers == 1:
        for ci, r, cfg in tasks:
            try:
                outcomes[(ci, r)] = _run_one(cfg)
            except Exception as exc:  # recorded per cell below
                outcomes[(ci, r)] = f"{type(exc).__name__}: {exc}"
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = {(ci, r): pool.submit(_run_one, cfg) for ci, r, cfg in tasks}
            for key, fut in futures.items():
                exc = fut.exception()
                outcomes[key] = f"{type(exc).__name__}: {exc}" if exc else fut.result()

    result = SweepResult(spec=spec)
    for ci, params in enumerate(cells):
        cell = CellResult(params=params, seeds=[], finals=[])
        for r in range(spec.replicates):
            out = outcomes[(ci, r)]
            if isinstance(out, str):
                cell.error = out
            else:
                cell.seeds.append(_replicate_cfg(spec, params, r).seed)
                cell.finals.append(out)
        result.cells.append(cell)
    return result


# -- serialization ------------------------------------------------------


def sweep_cells_csv(result: SweepResult) -> str:
    axis_names = list(result.spec.axes)
    header = axis_names + [
        f"{name}_{stat}" for name in FINAL_FIELDS for stat in ("mean", "se")
    ] + ["replicates", "error"]
    lines = [",".join(header)]
    for cell in result.cells:
        row = [repr(cell.params[a]) for a in axis_names]
        if cell.finals:
            for i in range(len(FINAL_FIELDS)):
                row += [repr(cell.mean(i)), repr(cell.stderr(i))]
        else:
            row += [""] * (2 * len(FINAL_FIELDS))
        row.append(str(len(cell.finals)))
        row.append(cell.error or "")
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def sweep_raw_csv(result: SweepResult) -> str:
    axis_names = list(result.spec.axes)
    header = axis_names + ["replicate", "seed", *FINAL_FIELDS]
    lines = [",".join(header)]
    for cell in result.cells:
        for r, (seed, final) in enumerate(zip(cell.seeds, cell.finals)):
            row = [repr(cell.params[a]) for a in axis_names]
            row += [str(r), str(seed)]
            row += [repr(final[0]), repr(final[1]), str(final[2]), repr(final[3])]
            lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def write_sweep(result: SweepResult, outdir: str | Path) -> None:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    (outdir / "sweep_cells.csv").write_text(sweep_cells_csv(result))
    (outdir / "sweep_raw.csv").write_text(sweep_raw_csv(result))


# -- experiment presets -------------------------------------------------
# Desk-scale versions of the published experiments: 10 replicates instead of
# 50 and coarse grids, at the published n=100-style defaults.


def _preset_base(t_max: int, **rec) -> SimConfig:
    from .recommender import RecommenderParams

    return SimConfig(t_max=t_max, recommender=RecommenderParams(**rec))


PRESETS: dict[str, SweepSpec] = {
    # polarization heatmap over (eta=beta, rho), opinion horizon
    "fig2": SweepSpec(
        base=_preset_base(1200),
        axes={"joint": (0.5, 1.0, 1.5, 2.0, 2.5, 3.0),
              "rho": (0.0, 0.25, 0.5, 0.75, 1.0)},
        replicates=10,
    ),
    # component-count heatmap over the same grid, structural horizon
    "fig3": SweepSpec(
        base=_preset_base(3000),
        axes={"joint": (0.5, 1.0, 1.5, 2.0, 2.5, 3.0),
              "rho": (0.0, 0.25, 0.5, 0.75, 1.0)},
        replicates=10,
    ),
    # polarization/radicalization vs rho at strong homophily (beta=4) for a
    # handful of structural strengths
    "fig4": SweepSpec(
        base=_preset_base(3000, beta=4.0),
        axes={"eta": (0.1, 0.2, 0.4, 0.6, 0.8, 1.0),
              "rho": (0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0)},
        replicates=10,
    ),
}
