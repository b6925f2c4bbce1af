"""Observables of a simulation state: polarization, radicalization,
fragmentation, and the population mean opinion."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, connected_components


@dataclass(frozen=True)
class MetricsRow:
    t: int
    polarization: float
    radicalization: float
    n_components: int
    mean_opinion: float


def _as_nonempty(x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.size == 0:
        raise ValueError("empty opinion state")
    return x


def polarization(x) -> float:
    """Population standard deviation (divisor n); zero only at consensus."""
    return float(np.std(_as_nonempty(x)))


def radicalization(x) -> float:
    """Mean absolute opinion."""
    return float(np.mean(np.abs(_as_nonempty(x))))


def mean_opinion(x) -> float:
    return float(np.mean(_as_nonempty(x)))


def component_count(g: Graph) -> int:
    return connected_components(g).count


def measure(g: Graph, x, t: int) -> MetricsRow:
    return MetricsRow(
        t=t,
        polarization=polarization(x),
        radicalization=radicalization(x),
        n_components=component_count(g),
        mean_opinion=mean_opinion(x),
    )
