"""Simulation engine: alternating rewiring rounds and synchronous opinion
updates, with deterministic seeding and trajectory recording.

One time step = every node gets a focal rewiring turn in a fresh random
order (each rewire immediately visible to later turns), then all opinions
update simultaneously on the post-rewiring graph.

A single root seed expands into named substreams (graph init, opinion init,
round scheduling) via ``numpy.random.SeedSequence.spawn``, so the trajectory
is a pure function of the configuration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import _kernel
from .dynamics import DynamicsParams, init_opinions, opinion_step
from .graph import Graph, new_random_graph
from .metrics import MetricsRow, measure
from .recommender import RecommenderParams

TRAJECTORY_HEADER = "t,polarization,radicalization,n_components,mean_opinion"
OPINION_SERIES_HEADER = "t,node,opinion"


@dataclass(frozen=True)
class SimConfig:
    n: int = 100
    mean_degree: float = 10.0
    t_max: int = 1200
    seed: int = 0
    recommender: RecommenderParams = field(default_factory=RecommenderParams)
    dynamics: DynamicsParams = field(default_factory=DynamicsParams)
    init_low: float = -1.0
    init_high: float = 1.0
    record_every: int = 10
    record_opinions: bool = False
    snapshot_times: tuple[int, ...] = ()
    require_connected: bool = True
    max_init_retries: int = 100

    @property
    def m(self) -> int:
        return int(round(self.n * self.mean_degree / 2.0))

    def validate(self) -> None:
        if self.n < 2:
            raise ValueError(f"n={self.n} must be >= 2")
        if self.t_max < 1:
            raise ValueError(f"t_max={self.t_max} must be >= 1")
        if self.record_every < 1:
            raise ValueError(f"record_every={self.record_every} must be >= 1")
        bound = self.dynamics.opinion_bound
        if self.init_low > self.init_high:
            raise ValueError(f"invalid init range [{self.init_low}, {self.init_high}]")
        if self.init_low < -bound or self.init_high > bound:
            raise ValueError(
                f"init range [{self.init_low}, {self.init_high}] exceeds the "
                f"opinion bound +/-{bound:g}"
            )
        if not 0 < self.m <= self.n * (self.n - 1) // 2:
            raise ValueError(f"mean_degree={self.mean_degree} infeasible for n={self.n}")


@dataclass
class Trajectory:
    rows: list[MetricsRow]
    final_graph: Graph
    final_opinions: np.ndarray
    skip_count: int
    opinion_series: list[tuple[int, np.ndarray]] | None = None
    snapshots: list[tuple[int, Graph, np.ndarray]] = field(default_factory=list)


def step(
    g: Graph, x: np.ndarray, cfg: SimConfig, rng: np.random.Generator
) -> tuple[Graph, np.ndarray, int]:
    """One full round of focal rewires followed by a synchronous opinion
    update. Mutates ``g`` in place; returns (g, new opinions, skip count)."""
    rec = cfg.recommender
    order = rng.permutation(g.n)
    uniforms = rng.random((g.n, 2))
    skips = _kernel.run_round(
        g.adj, x, order, rec.rho, rec.beta, rec.eta, rec.epsilon, uniforms
    )
    return g, opinion_step(g, x, cfg.dynamics), int(skips)


def simulate(cfg: SimConfig) -> Trajectory:
    cfg.validate()
    graph_seed, opinion_seed, round_seed = np.random.SeedSequence(cfg.seed).spawn(3)
    g = new_random_graph(
        cfg.n,
        cfg.m,
        np.random.default_rng(graph_seed),
        require_connected=cfg.require_connected,
        max_retries=cfg.max_init_retries,
    )
    x = init_opinions(cfg.n, np.random.default_rng(opinion_seed),
                      cfg.init_low, cfg.init_high)
    rng = np.random.default_rng(round_seed)

    snapshot_at = set(cfg.snapshot_times)
    traj = Trajectory(rows=[measure(g, x, 0)], final_graph=g, final_opinions=x,
                      skip_count=0,
                      opinion_series=[] if cfg.record_opinions else None)
    if cfg.record_opinions:
        traj.opinion_series.append((0, x.copy()))
    if 0 in snapshot_at:
        traj.snapshots.append((0, g.copy(), x.copy()))

    for t in range(1, cfg.t_max + 1):
        g, x, skips = step(g, x, cfg, rng)
        traj.skip_count += skips
        if t % cfg.record_every == 0 or t == cfg.t_max:
            traj.rows.append(measure(g, x, t))
            if cfg.record_opinions:
                traj.opinion_series.append((t, x.copy()))
        if t in snapshot_at:
            traj.snapshots.append((t, g.copy(), x.copy()))

    traj.final_graph = g
    traj.final_opinions = x
    return traj


# -- serialization ------------------------------------------------------


def trajectory_csv(traj: Trajectory) -> str:
    lines = [TRAJECTORY_HEADER]
    for r in traj.rows:
        lines.append(
            f"{r.t},{r.polarization!r},{r.radicalization!r},"
            f"{r.n_components},{r.mean_opinion!r}"
        )
    return "\n".join(lines) + "\n"


def opinion_series_csv(traj: Trajectory) -> str:
    if traj.opinion_series is None:
        raise ValueError("trajectory recorded without opinion series")
    lines = [OPINION_SERIES_HEADER]
    for t, x in traj.opinion_series:
        for node, value in enumerate(x):
            lines.append(f"{t},{node},{float(value)!r}")
    return "\n".join(lines) + "\n"


def write_trajectory(traj: Trajectory, path: str | Path) -> None:
    Path(path).write_text(trajectory_csv(traj))


def write_opinion_series(traj: Trajectory, path: str | Path) -> None:
    Path(path).write_text(opinion_series_csv(traj))
