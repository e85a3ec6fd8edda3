"""Regular graph families with known or bounded optimal modularity."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field

from .graph import Graph, complement

__all__ = [
    "FamilySpec",
    "FAMILIES",
    "clique_union",
    "matched_clique_union",
    "random_regular",
    "complement_3regular",
    "petersen",
    "cycle",
    "generate",
]


def _check_cliques(k, s):
    if k < 2:
        raise ValueError(f"need at least two cliques, got k={k}")
    if s < 4:
        raise ValueError(f"clique size must exceed 3 (n/k > 3), got s={s}")


def _clique_edges(k, s):
    return [(b * s + i, b * s + j) for b in range(k) for i in range(s) for j in range(i + 1, s)]


def clique_union(k: int, s: int) -> Graph:
    """``k`` disjoint copies of ``K_s``; node ``b*s + i`` is vertex ``i`` of clique ``b``.

    Optimal modularity is ``1 - 1/k``.
    """
    _check_cliques(k, s)
    return Graph(k * s, _clique_edges(k, s))


def matched_clique_union(k: int, s: int, seed=0) -> Graph:
    """Clique union with one edge ``{u_b, v_b}`` dropped per clique and a seeded matching U-V added.

    ``u_b`` and ``v_b`` are the first two vertices of clique ``b``. The
    matching ``u_b -> v_pi(b)`` uses a derangement so no dropped edge returns.
    """
    _check_cliques(k, s)
    rng = random.Random(seed)
    perm = list(range(k))
    while True:
        rng.shuffle(perm)
        if all(perm[b] != b for b in range(k)):
            break
    removed = {(b * s, b * s + 1) for b in range(k)}
    edges = [e for e in _clique_edges(k, s) if e not in removed]
    edges += [(b * s, perm[b] * s + 1) for b in range(k)]
    return Graph(k * s, edges)


def random_regular(n: int, d: int, seed=0, max_attempts: int = 1000) -> Graph:
    """Random d-regular simple graph from the pairing (configuration) model.

    Stubs are paired at random; pairs that would form a loop or repeat an
    edge are returned to the pool and re-paired. An attempt whose leftover
    stubs cannot be completed is discarded and restarted.
    """
    if n < 1 or d < 0 or d >= n:
        raise ValueError(f"need 0 <= d < n, got n={n}, d={d}")
    if (n * d) % 2:
        raise ValueError(f"n*d must be even, got n={n}, d={d}")
    rng = random.Random(seed)

    def completable(edges, pending):
        nodes = list(pending)
        return any(
            (min(a, b), max(a, b)) not in edges for i, a in enumerate(nodes) for b in nodes[i + 1 :]
        )

    for _ in range(max_attempts):
        edges = set()
        stubs = [v for v in range(n) for _ in range(d)]
        while stubs:
            rng.shuffle(stubs)
            pending = Counter()
            for a, b in zip(stubs[::2], stubs[1::2]):
                e = (min(a, b), max(a, b))
                if a != b and e not in edges:
                    edges.add(e)
                else:
                    pending[a] += 1
                    pending[b] += 1
            if pending and not completable(edges, pending):
                break
            stubs = [v for v, c in sorted(pending.items()) for _ in range(c)]
        else:
            return Graph(n, edges)
    raise RuntimeError(f"pairing model failed {max_attempts} times for n={n}, d={d}")


def complement_3regular(n: int, seed=0) -> Graph:
    """Edge complement of a random 3-regular graph: ``(n-4)``-regular, low modularity."""
    if n < 8 or n % 2:
        raise ValueError(f"need even n >= 8, got n={n}")
    return complement(random_regular(n, 3, seed))


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def cycle(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: dict = field(default_factory=dict)
    seed: int = 0

    def build(self) -> Graph:
        return generate(self.family, seed=self.seed, **self.params)

    def header(self) -> list:
        args = " ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return [f"family={self.family} {args} seed={self.seed}".strip()]


FAMILIES = {
    "clique_union": (clique_union, ("k", "s"), False),
    "matched_clique_union": (matched_clique_union, ("k", "s"), True),
    "random_regular": (random_regular, ("n", "d"), True),
    "complement_3regular": (complement_3regular, ("n",), True),
}


def generate(family: str, seed=0, **params) -> Graph:
    try:
        fn, names, seeded = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}") from None
    missing = [k for k in names if params.get(k) is None]
    if missing:
        raise ValueError(f"family {family} needs parameters {missing}")
    args = {k: params[k] for k in names}
    return fn(**args, seed=seed) if seeded else fn(**args)
