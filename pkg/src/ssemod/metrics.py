"""Measure, expansion, density and modularity of node sets and clusterings."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .graph import Clustering, Graph, as_nodeset

__all__ = [
    "SetMetrics",
    "ClusteringMetrics",
    "measure",
    "cut_size",
    "internal_edges",
    "degree_sum",
    "expansion",
    "density",
    "modularity_set",
    "modularity_set_definitional",
    "modularity_clustering",
    "modularity_clustering_exact",
    "clustering_metrics",
    "set_metrics",
    "two_cluster_objective",
]


@dataclass(frozen=True)
class SetMetrics:
    mu: float
    phi: float
    density: float
    modularity: float


@dataclass(frozen=True)
class ClusteringMetrics:
    internal: tuple          # m_i per part
    degree_sums: tuple       # D_i per part
    cross: dict              # (i, j) -> m_ij for i < j
    modularity: float


def _require_edges(g: Graph):
    if g.m == 0:
        raise ValueError("modularity is undefined for a graph without edges")


def measure(g: Graph, s: Iterable[int]) -> float:
    s = as_nodeset(g, s, allow_full=False)
    return len(s) / g.n


def internal_edges(g: Graph, s: frozenset) -> int:
    return sum(1 for u, v in g.edges if u in s and v in s)


def cut_size(g: Graph, s: frozenset) -> int:
    return sum(1 for u, v in g.edges if (u in s) != (v in s))


def degree_sum(g: Graph, s: Iterable[int]) -> int:
    return sum(g.degrees[v] for v in s)


def expansion(g: Graph, s: Iterable[int]) -> float:
    s = as_nodeset(g, s, allow_full=False)
    vol = degree_sum(g, s)
    if vol == 0:
        raise ZeroDivisionError("expansion undefined: every node of the set is isolated")
    return cut_size(g, s) / vol


def density(g: Graph, s: Iterable[int]) -> float:
    return 1.0 - expansion(g, s)


def _set_modularity_exact(m: int, m_s: int, d_s: int) -> Fraction:
    return Fraction(m_s, m) - Fraction(d_s, 2 * m) ** 2


def modularity_set(g: Graph, s: Iterable[int]) -> float:
    """``M(S) = m_S/m - (D_S/2m)^2``; ``S = V`` is allowed."""
    _require_edges(g)
    s = as_nodeset(g, s)
    return float(_set_modularity_exact(g.m, internal_edges(g, s), degree_sum(g, s)))


def modularity_set_definitional(g: Graph, s: Iterable[int]) -> float:
    """``M(S)`` by the double sum over ordered pairs ``(u, v)`` in ``S x S``."""
    _require_edges(g)
    idx = np.array(sorted(as_nodeset(g, s)))
    a = g.adjacency[np.ix_(idx, idx)].astype(float)
    deg = np.asarray(g.degrees, dtype=float)[idx]
    two_m = 2.0 * g.m
    return float((a - np.outer(deg, deg) / two_m).sum() / two_m)


def modularity_clustering_exact(g: Graph, c: Clustering) -> Fraction:
    """Exact rational ``sum_i (m_i/m - (D_i/2m)^2)``."""
    _require_edges(g)
    c.validate(g)
    label = np.empty(g.n, dtype=np.int64)
    for i, p in enumerate(c.parts):
        label[list(p)] = i
    m_i = [0] * c.k
    for u, v in g.edges:
        if label[u] == label[v]:
            m_i[label[u]] += 1
    d_i = [degree_sum(g, p) for p in c.parts]
    two_m = 2 * g.m
    num = sum(2 * two_m * mi - di * di for mi, di in zip(m_i, d_i))
    return Fraction(num, two_m * two_m)


def modularity_clustering(g: Graph, c: Clustering) -> float:
    return float(modularity_clustering_exact(g, c))


def clustering_metrics(g: Graph, c: Clustering) -> ClusteringMetrics:
    _require_edges(g)
    c.validate(g)
    label = {}
    for i, p in enumerate(c.parts):
        for v in p:
            label[v] = i
    m_i = [0] * c.k
    cross = {}
    for u, v in g.edges:
        a, b = label[u], label[v]
        if a == b:
            m_i[a] += 1
        else:
            key = (min(a, b), max(a, b))
            cross[key] = cross.get(key, 0) + 1
    d_i = tuple(degree_sum(g, p) for p in c.parts)
    return ClusteringMetrics(tuple(m_i), d_i, cross, modularity_clustering(g, c))


def set_metrics(g: Graph, s: Iterable[int]) -> SetMetrics:
    s = as_nodeset(g, s, allow_full=False)
    phi = expansion(g, s)
    return SetMetrics(len(s) / g.n, phi, 1.0 - phi, modularity_set(g, s))


def two_cluster_objective(mu: float, density: float) -> float:
    """Two-community objective ``2 (mu D - mu^2)`` for a regular graph."""
    return 2.0 * mu * (density - mu)
