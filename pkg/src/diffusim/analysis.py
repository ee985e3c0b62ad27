"""Structural statistics: matrix-average convergence, power-law fit,
clustering coefficient and characteristic path length.

Path length and clustering are topological: edge weights are ignored,
every stored edge counts as present.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .generators import GeneratorSpec
from .graph import Graph, bfs_distances, connected_components, \
    mean_offdiagonal_weight

__all__ = [
    "PowerLawFit",
    "PathLengthResult",
    "matrix_average_convergence",
    "fit_power_law",
    "clustering_coefficient",
    "characteristic_path_length",
    "average_degree_histograms",
]


def matrix_average_convergence(
        family: str, sizes: Iterable[int], seed: int = 0,
        edge_prob: float = 0.5) -> list[tuple[int, float]]:
    """Mean off-diagonal weight of one generated graph per size.

    The graph for ``sizes[i]`` uses the seed derived as the first 64-bit
    word of ``SeedSequence(seed, spawn_key=(i,))``, so the returned
    sequence is deterministic in (family, sizes, seed).
    """
    sizes = list(sizes)
    if not sizes:
        raise ValueError("sizes must be nonempty")
    out = []
    for i, n in enumerate(sizes):
        derived = int(np.random.SeedSequence(seed, spawn_key=(i,))
                      .generate_state(1, np.uint64)[0])
        prob = edge_prob if family == "random" else None
        spec = GeneratorSpec(family, n, prob,
                             None if family == "complete" else derived)
        out.append((n, mean_offdiagonal_weight(spec.build())))
    return out


@dataclass(frozen=True)
class PowerLawFit:
    slope: float
    intercept: float
    points_used: int


def fit_power_law(hist: Mapping[int, float]) -> PowerLawFit:
    """Least-squares line through (log k, log count(k)).

    Only degrees k >= 1 with strictly positive counts participate; at
    least two such points are required. The slope is negative for
    heavy-tailed degree distributions.
    """
    ks = np.array(sorted(k for k, c in hist.items() if k >= 1 and c > 0),
                  dtype=np.float64)
    if ks.size < 2:
        raise ValueError(
            f"power-law fit needs >= 2 positive-count degrees, got {ks.size}")
    cs = np.array([hist[int(k)] for k in ks], dtype=np.float64)
    x = np.log(ks)
    y = np.log(cs)
    slope, intercept = np.polyfit(x, y, 1)
    return PowerLawFit(float(slope), float(intercept), int(ks.size))


def clustering_coefficient(g: Graph) -> float:
    """Average over vertices of realized / possible links among neighbors.

    Vertices with degree < 2 contribute 0 to the average (they have no
    neighbor pair), which keeps tree-shaped graphs at exactly 0.
    """
    if g.n < 1:
        raise ValueError("clustering needs at least one vertex")
    neighbor_sets = [set() for _ in range(g.n)]
    for u, v, _w in g.edges():
        neighbor_sets[u].add(v)
        neighbor_sets[v].add(u)
    total = 0.0
    for v in range(g.n):
        nbrs = neighbor_sets[v]
        d = len(nbrs)
        if d < 2:
            continue
        links = sum(len(neighbor_sets[u] & nbrs) for u in nbrs) // 2
        total += links / (d * (d - 1) / 2)
    return total / g.n


@dataclass(frozen=True)
class PathLengthResult:
    """Mean shortest-path hop count over all unordered vertex pairs.

    For a disconnected graph the value covers the largest component only
    and ``connected`` is False.
    """

    value: float
    connected: bool
    component_size: int


def characteristic_path_length(g: Graph) -> PathLengthResult:
    if g.n < 2:
        raise ValueError("path length needs at least 2 vertices")
    comps = connected_components(g)
    connected = len(comps) == 1
    members = comps[0]
    m = members.size
    if m < 2:
        return PathLengthResult(float("nan"), connected, int(m))
    total = 0
    for s in members.tolist():
        dist = bfs_distances(g, s)
        total += int(dist[members].sum())
    pairs = m * (m - 1)  # ordered; symmetric sum counts each pair twice
    return PathLengthResult(total / pairs, connected, int(m))


def average_degree_histograms(
        hists: Iterable[Mapping[int, float]]) -> dict[int, float]:
    """Pointwise mean of degree histograms (missing degrees count as 0)."""
    hists = list(hists)
    if not hists:
        raise ValueError("need at least one histogram")
    acc: dict[int, float] = {}
    for h in hists:
        for k, c in h.items():
            acc[k] = acc.get(k, 0.0) + c
    return {k: acc[k] / len(hists) for k in sorted(acc)}
