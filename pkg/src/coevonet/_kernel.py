"""Numba kernels for the rewiring hot loop.

One simulation performs t_max * n focal rewires, each needing common-neighbor
counts against every non-neighbor; jitting this inner loop is what keeps a
3000-step run in the low seconds. The public recommender functions wrap these
kernels, so there is a single implementation of the weight formulas.

Raw similarity weights are scaled by their extreme value before
exponentiation so large exponents cannot overflow; the scaling cancels in the
normalization.
"""

from __future__ import annotations

import numpy as np
from numba import njit

# Focal-step outcome codes (returned in place of an added node index).
SKIP_NO_CANDIDATE = -1
SKIP_ISOLATED = -2
SKIP_NO_REMOVABLE = -3


@njit(cache=True)
def split_neighbors(adj, i):
    """Partition the other nodes into (neighbors, non-neighbor candidates)."""
    n = adj.shape[0]
    deg = 0
    for j in range(n):
        if adj[i, j]:
            deg += 1
    nbrs = np.empty(deg, np.int64)
    cand = np.empty(n - 1 - deg, np.int64)
    a = 0
    b = 0
    for j in range(n):
        if j == i:
            continue
        if adj[i, j]:
            nbrs[a] = j
            a += 1
        else:
            cand[b] = j
            b += 1
    return nbrs, cand


@njit(cache=True)
def structural_probs(adj, i, nbrs, cand, eta, eps):
    """Normalized triadic-closure weights [c_j(1-2eps)+eps]^eta over cand."""
    ncand = cand.shape[0]
    w = np.empty(ncand)
    if eta == 0.0:
        w[:] = 1.0 / ncand
        return w
    scale = 1.0 - 2.0 * eps
    vmax = 0.0
    for c in range(ncand):
        cnt = 0
        for t in range(nbrs.shape[0]):
            if adj[cand[c], nbrs[t]]:
                cnt += 1
        v = cnt * scale + eps
        w[c] = v
        if v > vmax:
            vmax = v
    total = 0.0
    for c in range(ncand):
        w[c] = (w[c] / vmax) ** eta
        total += w[c]
    for c in range(ncand):
        w[c] /= total
    return w


@njit(cache=True)
def opinion_probs(x, i, cand, beta, eps):
    """Normalized homophily weights [|x_i-x_j|(1-2eps)+eps]^(-beta) over cand."""
    ncand = cand.shape[0]
    w = np.empty(ncand)
    if beta == 0.0:
        w[:] = 1.0 / ncand
        return w
    scale = 1.0 - 2.0 * eps
    vmin = np.inf
    for c in range(ncand):
        v = abs(x[i] - x[cand[c]]) * scale + eps
        w[c] = v
        if v < vmin:
            vmin = v
    total = 0.0
    for c in range(ncand):
        w[c] = (w[c] / vmin) ** (-beta)
        total += w[c]
    for c in range(ncand):
        w[c] /= total
    return w


@njit(cache=True)
def combined_probs(adj, x, i, nbrs, cand, rho, beta, eta, eps):
    s = structural_probs(adj, i, nbrs, cand, eta, eps)
    h = opinion_probs(x, i, cand, beta, eps)
    return rho * h + (1.0 - rho) * s


@njit(cache=True)
def sample_index(probs, u):
    """Index of the first cumulative probability reaching u in [0, 1)."""
    acc = 0.0
    last = probs.shape[0] - 1
    for c in range(last):
        acc += probs[c]
        if acc >= u:
            return c
    return last  # guards against cumulative rounding below 1


@njit(cache=True)
def removal_pool(adj, nbrs):
    """Neighbors whose degree exceeds 1, i.e. links breakable without
    stranding the far endpoint."""
    n = adj.shape[1]
    pool = np.empty(nbrs.shape[0], np.int64)
    size = 0
    for t in range(nbrs.shape[0]):
        deg = 0
        for j in range(n):
            if adj[nbrs[t], j]:
                deg += 1
                if deg > 1:
                    break
        if deg > 1:
            pool[size] = nbrs[t]
            size += 1
    return pool[:size]


@njit(cache=True)
def focal_step(adj, x, i, rho, beta, eta, eps, u_select, u_remove):
    """One focal rewire: add a recommended link, break one old link.

    Mutates ``adj`` in place. Returns (added_node, removed_node); a negative
    first element is a skip code and means the graph was left untouched.
    """
    nbrs, cand = split_neighbors(adj, i)
    if cand.shape[0] == 0:
        return SKIP_NO_CANDIDATE, -1
    if nbrs.shape[0] == 0:
        return SKIP_ISOLATED, -1
    pool = removal_pool(adj, nbrs)
    if pool.shape[0] == 0:
        return SKIP_NO_REMOVABLE, -1
    probs = combined_probs(adj, x, i, nbrs, cand, rho, beta, eta, eps)
    j = cand[sample_index(probs, u_select)]
    k = pool[min(int(u_remove * pool.shape[0]), pool.shape[0] - 1)]
    adj[i, j] = adj[j, i] = True
    adj[i, k] = adj[k, i] = False
    return j, k


@njit(cache=True)
def run_round(adj, x, order, rho, beta, eta, eps, uniforms):
    """Give every node one focal turn, in the supplied order.

    ``uniforms`` holds two pre-drawn uniforms per turn (selection, removal);
    turns that skip leave their draws unused, so recording options can never
    perturb the stream. Returns the number of skipped turns.
    """
    skips = 0
    for idx in range(order.shape[0]):
        j, _ = focal_step(
            adj, x, order[idx], rho, beta, eta, eps,
            uniforms[idx, 0], uniforms[idx, 1],
        )
        if j < 0:
            skips += 1
    return skips
