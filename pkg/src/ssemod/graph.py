"""Simple undirected graphs, node sets, partitions and the edge-list format."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

import numpy as np

from .errors import GraphFormatError

__all__ = [
    "Graph",
    "Clustering",
    "TwoPartition",
    "as_nodeset",
    "load_graph",
    "read_graph",
    "dump_graph",
    "is_regular",
    "complement",
    "induced_subgraph",
    "load_partition",
]


class Graph:
    """Immutable simple undirected graph on nodes ``0..n-1``.

    Edges are stored as sorted pairs ``(u, v)`` with ``u < v``. Degrees and
    adjacency lists are computed once at construction.
    """

    __slots__ = ("_n", "_edges", "_degrees", "_adj", "__dict__")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 1:
            raise ValueError(f"node count must be positive, got {n}")
        normalized = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            e = (u, v) if u < v else (v, u)
            if e in normalized:
                raise ValueError(f"duplicate edge {e}")
            normalized.add(e)
        adj = [[] for _ in range(n)]
        for u, v in normalized:
            adj[u].append(v)
            adj[v].append(u)
        self._n = n
        self._edges = frozenset(normalized)
        self._adj = tuple(tuple(sorted(a)) for a in adj)
        self._degrees = tuple(len(a) for a in self._adj)
        assert sum(self._degrees) == 2 * len(self._edges)

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> frozenset:
        return self._edges

    @property
    def degrees(self) -> tuple:
        return self._degrees

    @property
    def adj(self) -> tuple:
        """Sorted neighbour tuple per node."""
        return self._adj

    def sorted_edges(self) -> list:
        return sorted(self._edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._edges

    @cached_property
    def adjacency(self) -> np.ndarray:
        """Dense 0/1 adjacency matrix (read-only)."""
        a = np.zeros((self._n, self._n), dtype=np.int64)
        if self._edges:
            idx = np.array(sorted(self._edges))
            a[idx[:, 0], idx[:, 1]] = 1
            a[idx[:, 1], idx[:, 0]] = 1
        a.setflags(write=False)
        return a

    @cached_property
    def neighbor_masks(self) -> tuple:
        """Neighbourhood of each node as an integer bitmask."""
        return tuple(sum(1 << v for v in a) for a in self._adj)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self):
        return hash((self._n, self._edges))

    def __repr__(self):
        return f"Graph(n={self._n}, m={self.m})"


def as_nodeset(g: Graph, s: Iterable[int], *, allow_empty=False, allow_full=True) -> frozenset:
    """Validate ``s`` against the node universe of ``g`` and freeze it."""
    s = frozenset(int(v) for v in s)
    if any(v < 0 or v >= g.n for v in s):
        raise ValueError(f"node set has ids outside 0..{g.n - 1}")
    if not s and not allow_empty:
        raise ValueError("node set must be non-empty")
    if len(s) == g.n and not allow_full:
        raise ValueError("node set must be a proper subset of V")
    return s


@dataclass(frozen=True)
class TwoPartition:
    side_a: frozenset
    side_b: frozenset

    @classmethod
    def from_set(cls, g: Graph, s: Iterable[int]) -> "TwoPartition":
        s = as_nodeset(g, s, allow_full=False)
        return cls(s, frozenset(range(g.n)) - s)

    def canonical(self) -> "TwoPartition":
        """Smaller side first; on equal sizes the lexicographically smaller side."""
        a, b = sorted(self.side_a), sorted(self.side_b)
        if (len(b), b) < (len(a), a):
            return TwoPartition(self.side_b, self.side_a)
        return self

    def as_clustering(self) -> "Clustering":
        return Clustering((self.side_a, self.side_b))


@dataclass(frozen=True)
class Clustering:
    parts: tuple

    def __post_init__(self):
        parts = tuple(frozenset(p) for p in self.parts)
        if not parts or any(not p for p in parts):
            raise ValueError("a clustering needs at least one part and no empty parts")
        object.__setattr__(self, "parts", parts)

    @property
    def k(self) -> int:
        return len(self.parts)

    def validate(self, g: Graph) -> "Clustering":
        seen = set()
        for p in self.parts:
            if seen & p:
                raise ValueError("clustering parts overlap")
            seen |= p
        if seen != set(range(g.n)):
            raise ValueError("clustering parts do not cover V")
        return self

    @classmethod
    def from_labels(cls, labels) -> "Clustering":
        groups = {}
        for v, lab in enumerate(labels):
            groups.setdefault(lab, []).append(v)
        return cls(tuple(groups[k] for k in sorted(groups, key=lambda k: groups[k][0])))

    def labels(self, n: int) -> np.ndarray:
        out = np.full(n, -1, dtype=np.int64)
        for i, p in enumerate(sorted(self.parts, key=min)):
            out[list(p)] = i
        return out


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def load_graph(text: str) -> Graph:
    """Parse an edge-list document.

    The first non-comment line holds the node count ``n``; every following
    non-comment line holds one edge ``u v``. Lines starting with ``#`` are
    comments.
    """
    lines = _content_lines(text)
    try:
        lineno, first = next(lines)
    except StopIteration:
        raise GraphFormatError("missing node count") from None
    fields = first.split()
    if len(fields) != 1 or not fields[0].isdigit():
        raise GraphFormatError(f"expected node count, got {first!r}", lineno)
    n = int(fields[0])
    if n < 1:
        raise GraphFormatError("node count must be positive", lineno)
    edges = set()
    for lineno, line in lines:
        fields = line.split()
        if len(fields) != 2:
            raise GraphFormatError(f"expected 'u v', got {line!r}", lineno)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise GraphFormatError(f"non-integer node id in {line!r}", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"node id out of range 0..{n - 1}", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at node {u}", lineno)
        e = (min(u, v), max(u, v))
        if e in edges:
            raise GraphFormatError(f"duplicate edge {e[0]} {e[1]}", lineno)
        edges.add(e)
    return Graph(n, edges)


def read_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return load_graph(fh.read())


def dump_graph(g: Graph, header: Optional[Iterable[str]] = None) -> str:
    """Serialise ``g`` in edge-list format, edges in sorted order."""
    out = [f"# {h}" for h in (header or ())]
    out.append(str(g.n))
    out.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(out) + "\n"


def load_partition(text: str, g: Optional[Graph] = None) -> Clustering:
    """Parse a partition file: one part per line, space-separated node ids."""
    parts = []
    for lineno, line in _content_lines(text):
        try:
            parts.append([int(t) for t in line.split()])
        except ValueError:
            raise GraphFormatError(f"non-integer node id in {line!r}", lineno) from None
    c = Clustering(tuple(parts))
    return c.validate(g) if g is not None else c


def is_regular(g: Graph) -> Optional[int]:
    """Return the common degree if ``g`` is regular, else ``None``."""
    d = g.degrees[0]
    return d if all(x == d for x in g.degrees) else None


def complement(g: Graph) -> Graph:
    n = g.n
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in g.edges))


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, dict]:
    """Subgraph induced by ``s``, relabelled by ascending original id.

    Returns the subgraph and the map ``original id -> new id``.
    """
    nodes = sorted(as_nodeset(g, s))
    relabel = {v: i for i, v in enumerate(nodes)}
    edges = [(relabel[u], relabel[v]) for u, v in g.edges if u in relabel and v in relabel]
    return Graph(len(nodes), edges), relabel
