"""Undirected simple graph on a fixed node set, backed by a boolean adjacency matrix.

Nodes are integers 0..n-1. The adjacency matrix is kept symmetric with a zero
diagonal at all times; ``edge_count`` is maintained incrementally. A dense
matrix is the right trade-off here: the recommender repeatedly needs
common-neighbor counts between a focal node and all of its non-neighbors,
which reduces to cheap row slicing at the population sizes this model targets.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np


class GraphError(ValueError):
    """Illegal graph operation (self-loop, duplicate edge, missing edge)."""


@dataclass
class ComponentLabeling:
    """Connected-component labels: nodes share a label iff a path joins them."""

    labels: np.ndarray  # int array of length n, labels are 0..count-1
    count: int


class Graph:
    """Undirected simple graph with a fixed number of nodes."""

    __slots__ = ("n", "adj", "edge_count")

    def __init__(self, n: int, adjacency: np.ndarray | None = None):
        if n < 1:
            raise GraphError(f"need at least one node, got n={n}")
        self.n = n
        if adjacency is None:
            self.adj = np.zeros((n, n), dtype=bool)
            self.edge_count = 0
        else:
            adjacency = np.asarray(adjacency, dtype=bool)
            if adjacency.shape != (n, n):
                raise GraphError(f"adjacency shape {adjacency.shape} != ({n}, {n})")
            if not np.array_equal(adjacency, adjacency.T):
                raise GraphError("adjacency must be symmetric")
            if adjacency.diagonal().any():
                raise GraphError("adjacency must have a zero diagonal")
            self.adj = adjacency.copy()
            self.edge_count = int(adjacency.sum()) // 2

    # -- queries ---------------------------------------------------------

    def _check_node(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise IndexError(f"node {i} out of range [0, {self.n})")

    def has_edge(self, i: int, j: int) -> bool:
        self._check_node(i)
        self._check_node(j)
        return bool(self.adj[i, j])

    def neighbors(self, i: int) -> np.ndarray:
        """Nodes j with an edge to i, in ascending order."""
        self._check_node(i)
        return np.flatnonzero(self.adj[i])

    def degree(self, i: int) -> int:
        self._check_node(i)
        return int(self.adj[i].sum())

    def degrees(self) -> np.ndarray:
        return self.adj.sum(axis=1)

    def common_neighbor_count(self, i: int, j: int) -> int:
        """|N_i ∩ N_j| for distinct nodes i and j."""
        self._check_node(i)
        self._check_node(j)
        if i == j:
            raise GraphError("common neighbors undefined for i == j")
        return int(np.count_nonzero(self.adj[i] & self.adj[j]))

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (i, j) pairs with i < j, lexicographically sorted."""
        iu, ju = np.nonzero(np.triu(self.adj, 1))
        return list(zip(iu.tolist(), ju.tolist()))

    def copy(self) -> "Graph":
        g = Graph.__new__(Graph)
        g.n = self.n
        g.adj = self.adj.copy()
        g.edge_count = self.edge_count
        return g

    # -- mutation --------------------------------------------------------

    def add_edge(self, i: int, j: int) -> None:
        self._check_node(i)
        self._check_node(j)
        if i == j:
            raise GraphError("self-loops are not allowed")
        if self.adj[i, j]:
            raise GraphError(f"edge ({i}, {j}) already present")
        self.adj[i, j] = self.adj[j, i] = True
        self.edge_count += 1

    def remove_edge(self, i: int, j: int) -> None:
        self._check_node(i)
        self._check_node(j)
        if i == j:
            raise GraphError("self-loops are not allowed")
        if not self.adj[i, j]:
            raise GraphError(f"edge ({i}, {j}) not present")
        self.adj[i, j] = self.adj[j, i] = False
        self.edge_count -= 1

    def validate(self) -> None:
        """Assert structural invariants; cheap enough to call from tests."""
        assert np.array_equal(self.adj, self.adj.T), "adjacency not symmetric"
        assert not self.adj.diagonal().any(), "nonzero diagonal"
        assert self.edge_count == int(self.adj.sum()) // 2, "stale edge_count"


def connected_components(g: Graph) -> ComponentLabeling:
    """Label components by breadth-first expansion over adjacency rows."""
    labels = np.full(g.n, -1, dtype=np.int64)
    count = 0
    for s in range(g.n):
        if labels[s] >= 0:
            continue
        member = np.zeros(g.n, dtype=bool)
        member[s] = True
        frontier = member.copy()
        while frontier.any():
            nxt = g.adj[frontier].any(axis=0) & ~member
            member |= nxt
            frontier = nxt
        labels[member] = count
        count += 1
    return ComponentLabeling(labels=labels, count=count)


def is_connected(g: Graph) -> bool:
    return connected_components(g).count == 1


def new_random_graph(
    n: int,
    m: int,
    rng: np.random.Generator,
    require_connected: bool = True,
    max_retries: int = 100,
) -> Graph:
    """Uniform random simple graph with exactly m edges (G(n, M) model).

    When ``require_connected`` is set, resamples until the graph is connected
    or ``max_retries`` draws have been used.
    """
    max_edges = n * (n - 1) // 2
    if not 0 < m <= max_edges:
        raise GraphError(f"m={m} infeasible for n={n} (must be in 1..{max_edges})")
    if require_connected and m < n - 1:
        raise GraphError(f"m={m} < n-1={n - 1}: connected graph impossible")
    iu, ju = np.triu_indices(n, 1)
    for _ in range(max(1, max_retries)):
        sel = rng.choice(max_edges, size=m, replace=False)
        adj = np.zeros((n, n), dtype=bool)
        adj[iu[sel], ju[sel]] = True
        adj |= adj.T
        g = Graph(n, adj)
        if not require_connected or is_connected(g):
            return g
    raise RuntimeError(
        f"no connected graph with n={n}, m={m} found in {max_retries} draws"
    )


# -- edge-list snapshot format ------------------------------------------
# One "i j" pair per line with i < j, after a header "# n=<n> m=<m> t=<t>".


def write_edge_list(g: Graph, path: str | Path, t: int = 0) -> None:
    lines = [f"# n={g.n} m={g.edge_count} t={t}"]
    lines.extend(f"{i} {j}" for i, j in g.edges())
    Path(path).write_text("\n".join(lines) + "\n")


def read_edge_list(path: str | Path) -> tuple[Graph, int]:
    """Parse an edge-list snapshot; returns the graph and its time stamp."""
    text = Path(path).read_text().strip().splitlines()
    if not text or not text[0].startswith("#"):
        raise ValueError(f"{path}: missing '# n=... m=... t=...' header")
    fields = dict(tok.split("=") for tok in text[0].lstrip("# ").split())
    n, m, t = int(fields["n"]), int(fields["m"]), int(fields["t"])
    g = Graph(n)
    for line in text[1:]:
        i, j = map(int, line.split())
        g.add_edge(i, j)
    if g.edge_count != m:
        raise ValueError(f"{path}: header claims m={m}, found {g.edge_count} edges")
    return g, t
