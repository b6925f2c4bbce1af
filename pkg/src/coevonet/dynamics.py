"""Synchronous opinion dynamics with bounded social influence.

Every node updates at once:

    x_i' = gamma * x_i + K * mean over neighbors j of tanh(alpha * x_j)

Opinions decay toward neutrality at rate gamma and are pushed by the
saturated average stance of the neighborhood, which confines trajectories to
[-K/(1-gamma), K/(1-gamma)] whenever they start inside.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class DynamicsParams:
    """k: social-influence strength; gamma: opinion persistence in [0, 1);
    alpha: controversy/reinforcement gain, >= 0."""

    k: float = 0.1
    gamma: float = 0.99
    alpha: float = 0.3

    def __post_init__(self):
        if self.k < 0.0:
            raise ValueError(f"k={self.k} must be >= 0")
        if not 0.0 <= self.gamma < 1.0:
            raise ValueError(f"gamma={self.gamma} outside [0, 1)")
        if self.alpha < 0.0:
            raise ValueError(f"alpha={self.alpha} must be >= 0")

    @property
    def opinion_bound(self) -> float:
        return self.k / (1.0 - self.gamma)


def opinion_step(g, x: np.ndarray, params: DynamicsParams) -> np.ndarray:
    """One synchronous update; isolated nodes (degree 0) just decay."""
    x = np.asarray(x, dtype=np.float64)
    if not np.isfinite(x).all():
        raise ValueError("non-finite opinions")
    deg = g.adj.sum(axis=1)
    social = g.adj @ np.tanh(params.alpha * x)
    social = np.where(deg > 0, social / np.maximum(deg, 1), 0.0)
    return params.gamma * x + params.k * social


def consensus_fixed_point(params: DynamicsParams, tol: float = 1e-10) -> float:
    """Positive root of (1-gamma) x = k tanh(alpha x), or 0 when subcritical.

    A nonzero root exists iff k*alpha/(1-gamma) > 1; found by bisection
    between 0+ and the opinion bound.
    """
    if params.k * params.alpha / (1.0 - params.gamma) <= 1.0:
        return 0.0

    def f(v: float) -> float:
        return (1.0 - params.gamma) * v - params.k * np.tanh(params.alpha * v)

    lo, hi = tol, params.opinion_bound + 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def init_opinions(
    n: int,
    rng: np.random.Generator,
    low: float = -1.0,
    high: float = 1.0,
) -> np.ndarray:
    """I.i.d. uniform initial opinions on [low, high]."""
    if low > high:
        raise ValueError(f"invalid range [{low}, {high}]")
    if low == high:
        return np.full(n, float(low))
    return rng.uniform(low, high, n)
