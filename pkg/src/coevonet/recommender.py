"""Link recommendation: similarity-weighted candidate distributions and the
rewiring move built on them.

A focal node i is offered each non-neighbor j with probability

    P(j) = rho * H_ij + (1 - rho) * S_ij

where S weights candidates by shared neighbors (triadic closure) raised to
``eta`` and H weights them by inverse opinion distance (homophily) raised to
``beta``; both carry a noise floor ``epsilon`` so every candidate keeps a
nonzero chance and opinion coincidence cannot diverge.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernel
from .graph import Graph


@dataclass(frozen=True)
class RecommenderParams:
    """Weights of the recommendation distribution.

    rho:     share of the homophily term, in [0, 1].
    beta:    opinion-similarity exponent, >= 0.
    eta:     structural-similarity exponent, >= 0.
    epsilon: noise floor, in (0, 1/2) so that more-similar stays more-likely.
    """

    rho: float = 0.5
    beta: float = 0.0
    eta: float = 0.0
    epsilon: float = 0.01

    def __post_init__(self):
        if not 0.0 <= self.rho <= 1.0:
            raise ValueError(f"rho={self.rho} outside [0, 1]")
        if self.beta < 0.0:
            raise ValueError(f"beta={self.beta} must be >= 0")
        if self.eta < 0.0:
            raise ValueError(f"eta={self.eta} must be >= 0")
        if not 0.0 < self.epsilon < 0.5:
            raise ValueError(f"epsilon={self.epsilon} outside (0, 1/2)")


@dataclass
class CandidateDistribution:
    """Probabilities over the focal node's non-neighbors, summing to 1."""

    focal: int
    candidates: np.ndarray  # ascending node ids
    probabilities: np.ndarray


@dataclass
class RewireOutcome:
    added: tuple[int, int] | None
    removed: tuple[int, int] | None
    skipped: bool


class EmptyCandidateSet(ValueError):
    """The focal node is connected to every other node; skip its turn."""


def candidate_set(g: Graph, i: int) -> np.ndarray:
    """Non-neighbors of i (excluding i itself), in ascending order."""
    g._check_node(i)
    mask = ~g.adj[i]
    mask[i] = False
    return np.flatnonzero(mask)


def _split(g: Graph, i: int):
    nbrs, cand = _kernel.split_neighbors(g.adj, i)
    if cand.shape[0] == 0:
        raise EmptyCandidateSet(f"node {i} has no non-neighbors")
    return nbrs, cand


def structural_weights(g: Graph, i: int, params: RecommenderParams) -> CandidateDistribution:
    """Triadic-closure distribution: P(j) ∝ [|N_i ∩ N_j|(1-2eps)+eps]^eta."""
    nbrs, cand = _split(g, i)
    probs = _kernel.structural_probs(g.adj, i, nbrs, cand, params.eta, params.epsilon)
    return CandidateDistribution(i, cand, probs)


def opinion_weights(g: Graph, x: np.ndarray, i: int, params: RecommenderParams) -> CandidateDistribution:
    """Homophily distribution: P(j) ∝ [|x_i - x_j|(1-2eps)+eps]^(-beta)."""
    _, cand = _split(g, i)
    probs = _kernel.opinion_probs(np.asarray(x, dtype=np.float64), i, cand,
                                  params.beta, params.epsilon)
    return CandidateDistribution(i, cand, probs)


def combined_distribution(g: Graph, x: np.ndarray, i: int, params: RecommenderParams) -> CandidateDistribution:
    """Convex combination of the homophily and triadic-closure distributions."""
    nbrs, cand = _split(g, i)
    probs = _kernel.combined_probs(
        g.adj, np.asarray(x, dtype=np.float64), i, nbrs, cand,
        params.rho, params.beta, params.eta, params.epsilon,
    )
    return CandidateDistribution(i, cand, probs)


def sample_recommendation(dist: CandidateDistribution, rng: np.random.Generator) -> int:
    """Draw one candidate according to its probability."""
    return int(dist.candidates[_kernel.sample_index(dist.probabilities, rng.random())])


def rewire_step(
    g: Graph,
    x: np.ndarray,
    i: int,
    params: RecommenderParams,
    rng: np.random.Generator,
) -> RewireOutcome:
    """Add one recommended link to i and break one of i's old links.

    The broken link is drawn uniformly among i's pre-addition links whose far
    endpoint has degree > 1, so the move conserves the edge count exactly and
    never strands a node. The turn is skipped (graph untouched) when i has no
    candidates, no links, or no breakable link.
    """
    g._check_node(i)
    j, k = _kernel.focal_step(
        g.adj, np.asarray(x, dtype=np.float64), i,
        params.rho, params.beta, params.eta, params.epsilon,
        rng.random(), rng.random(),
    )
    if j < 0:
        return RewireOutcome(added=None, removed=None, skipped=True)
    # adjacency already mutated by the kernel; keep the edge count in sync
    # (one add and one remove cancel out)
    return RewireOutcome(added=(i, int(j)), removed=(i, int(k)), skipped=False)
