"""Walk matrices of regular graphs and their re-regularised residuals.

A :class:`ResidualView` is a d-regular base graph with some nodes removed.
Every edge endpoint lost to a removed neighbour is replaced by a self-loop of
weight 1/2, which (counting loops twice) puts ``(d - deg'(v)) / d`` on the
diagonal of the walk matrix and keeps it symmetric and stochastic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Union

import numpy as np

from .errors import NotRegularError
from .graph import Graph, as_nodeset, induced_subgraph, is_regular

__all__ = [
    "BOUNDARY_TOL",
    "ResidualView",
    "WalkMatrix",
    "SpectralSummary",
    "walk_matrix",
    "eigenvalues",
    "eigh",
    "threshold_rank",
    "rank_cutoff",
    "spectral_summary",
]

BOUNDARY_TOL = 1e-9


@dataclass(frozen=True)
class ResidualView:
    base: Graph
    removed: frozenset = frozenset()
    d: int = field(default=None)

    def __post_init__(self):
        d = is_regular(self.base)
        if d is None:
            raise NotRegularError("residual views need a regular base graph")
        if self.d is not None and self.d != d:
            raise ValueError(f"declared degree {self.d} but base graph is {d}-regular")
        object.__setattr__(self, "d", d)
        removed = as_nodeset(self.base, self.removed, allow_empty=True)
        if len(removed) == self.base.n:
            raise ValueError("a residual view needs at least one surviving node")
        object.__setattr__(self, "removed", removed)

    @classmethod
    def of(cls, g: Graph) -> "ResidualView":
        return cls(g)

    def without(self, s: Iterable[int]) -> "ResidualView":
        """View with the extra nodes ``s`` (original ids) removed."""
        return ResidualView(self.base, self.removed | frozenset(s))

    @cached_property
    def nodes(self) -> tuple:
        """Surviving node ids in ascending order; position = local index."""
        return tuple(v for v in range(self.base.n) if v not in self.removed)

    @property
    def r(self) -> int:
        return len(self.nodes)

    @cached_property
    def graph(self) -> Graph:
        """Real (loop-free) edges among surviving nodes, local labels."""
        return induced_subgraph(self.base, self.nodes)[0]

    @cached_property
    def residual_degrees(self) -> np.ndarray:
        return np.asarray(self.graph.degrees, dtype=np.int64)

    def to_local(self, s: Iterable[int]) -> list:
        index = {v: i for i, v in enumerate(self.nodes)}
        try:
            return sorted(index[v] for v in s)
        except KeyError as exc:
            raise ValueError(f"node {exc.args[0]} is not in the residual") from None

    def to_original(self, local: Iterable[int]) -> frozenset:
        return frozenset(self.nodes[i] for i in local)

    def expansion(self, s: Iterable[int]) -> float:
        """Real cut edges over ``d |S|``; ``s`` holds original ids."""
        local = self.to_local(s)
        if not local:
            raise ValueError("expansion of an empty set")
        g = self.graph
        inside = set(local)
        cut = sum(1 for v in local for u in g.adj[v] if u not in inside)
        return cut / (self.d * len(local))


@dataclass(frozen=True)
class WalkMatrix:
    nodes: tuple
    entries: np.ndarray
    d: int
    loops: tuple  # (d - deg'(v)) per surviving node

    @property
    def order(self) -> int:
        return len(self.nodes)

    def exact_entries(self) -> list:
        """Entries as :class:`fractions.Fraction`, row by row."""
        a = (self.entries * self.d).round().astype(np.int64)
        np.fill_diagonal(a, self.loops)
        return [[Fraction(int(x), self.d) for x in row] for row in a]


@dataclass(frozen=True)
class SpectralSummary:
    eigenvalues: tuple
    tau: float
    rank: int


def _as_view(obj: Union[Graph, ResidualView]) -> ResidualView:
    return obj if isinstance(obj, ResidualView) else ResidualView(obj)


def walk_matrix(view: Union[Graph, ResidualView]) -> WalkMatrix:
    view = _as_view(view)
    if view.d == 0:
        raise NotRegularError("walk matrix needs degree d >= 1")
    a = view.graph.adjacency.astype(np.float64) / view.d
    loops = tuple(int(view.d - x) for x in view.residual_degrees)
    a[np.diag_indices_from(a)] = np.asarray(loops, dtype=np.float64) / view.d
    a.setflags(write=False)
    return WalkMatrix(view.nodes, a, view.d, loops)


def eigh(w: WalkMatrix):
    """Eigenvalues (descending) and matching orthonormal eigenvector columns."""
    vals, vecs = np.linalg.eigh(w.entries)
    return vals[::-1], vecs[:, ::-1]


def eigenvalues(w: WalkMatrix) -> np.ndarray:
    return np.linalg.eigvalsh(w.entries)[::-1]


def rank_cutoff(tau: float) -> float:
    """Effective cutoff: ``tau + BOUNDARY_TOL``, never more than halfway from ``tau`` to 1."""
    return min(tau + BOUNDARY_TOL, (tau + 1.0) / 2.0)


def _count_above(vals, tau):
    return int(np.sum(np.abs(vals) > rank_cutoff(tau)))


def threshold_rank(view: Union[Graph, ResidualView, WalkMatrix], tau: float) -> int:
    """Number of walk-matrix eigenvalues with ``|lambda| > tau`` (with boundary tolerance)."""
    if not 0 <= tau < 1:
        raise ValueError(f"tau must lie in [0, 1), got {tau}")
    w = view if isinstance(view, WalkMatrix) else walk_matrix(view)
    return _count_above(eigenvalues(w), tau)


def spectral_summary(view: Union[Graph, ResidualView], tau: float) -> SpectralSummary:
    vals = eigenvalues(walk_matrix(view))
    return SpectralSummary(tuple(float(x) for x in vals), tau, _count_above(vals, tau))
