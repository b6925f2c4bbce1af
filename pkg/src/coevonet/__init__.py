"""Deterministic simulator of co-evolving opinions and network structure
under a link recommender that interpolates between opinion similarity
(homophily) and structural similarity (triadic closure)."""

from .dynamics import DynamicsParams, consensus_fixed_point, init_opinions, opinion_step
from .engine import SimConfig, Trajectory, simulate, step
from .graph import (
    ComponentLabeling,
    Graph,
    connected_components,
    new_random_graph,
    read_edge_list,
    write_edge_list,
)
from .harness import PRESETS, SweepSpec, run_sweep
from .metrics import (
    MetricsRow,
    component_count,
    mean_opinion,
    measure,
    polarization,
    radicalization,
)
from .recommender import (
    CandidateDistribution,
    EmptyCandidateSet,
    RecommenderParams,
    RewireOutcome,
    candidate_set,
    combined_distribution,
    opinion_weights,
    rewire_step,
    sample_recommendation,
    structural_weights,
)

__version__ = "0.1.0"

__all__ = [
    "CandidateDistribution",
    "ComponentLabeling",
    "DynamicsParams",
    "EmptyCandidateSet",
    "Graph",
    "MetricsRow",
    "PRESETS",
    "RecommenderParams",
    "RewireOutcome",
    "SimConfig",
    "SweepSpec",
    "Trajectory",
    "candidate_set",
    "combined_distribution",
    "component_count",
    "connected_components",
    "consensus_fixed_point",
    "init_opinions",
    "mean_opinion",
    "measure",
    "metrics",
    "new_random_graph",
    "opinion_step",
    "opinion_weights",
    "polarization",
    "radicalization",
    "read_edge_list",
    "rewire_step",
    "run_sweep",
    "sample_recommendation",
    "simulate",
    "step",
    "structural_weights",
    "write_edge_list",
]
