"""Exact optima by exhaustive enumeration (small graphs only)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

from ._subsets import mask_to_nodes, subset_chunks
from .errors import BudgetExceededError
from .graph import Clustering, Graph, TwoPartition

__all__ = ["OracleResult", "opt_exact", "opt2_exact", "sse_exact", "OPT_MAX_N", "OPT2_MAX_N", "SSE_MAX_N"]

OPT_MAX_N = 13
OPT2_MAX_N = 26
SSE_MAX_N = 22


@dataclass(frozen=True)
class OracleResult:
    value: float
    witness: Any
    instances_enumerated: int
    exact: Fraction = None


def _check_budget(g: Graph, limit: int, what: str):
    if g.n > limit:
        raise BudgetExceededError(f"{what} enumerates at most n={limit} nodes, got n={g.n}")


def opt_exact(g: Graph, max_n: int = OPT_MAX_N) -> OracleResult:
    """Maximum modularity over all set partitions of V.

    Partitions are enumerated as restricted growth strings. The objective is
    tracked as the integer ``4m * sum(m_i) - sum(D_i^2)`` so comparisons are
    exact; the first maximiser in enumeration order is the witness.
    """
    _check_budget(g, max_n, "opt_exact")
    if g.m == 0:
        raise ValueError("modularity is undefined for a graph without edges")
    n, m = g.n, g.m
    four_m = 4 * m
    deg = g.degrees
    lower = [tuple(u for u in g.adj[v] if u < v) for v in range(n)]
    labels = [0] * n
    block_deg = [0] * n
    best = {"q": None, "labels": None}
    count = 0
    last = n - 1

    def place_last(k, q):
        nonlocal count
        d = deg[last]
        cnt = [0] * (k + 1)
        for u in lower[last]:
            cnt[labels[u]] += 1
        top_b, top_q = -1, None
        for b in range(k):
            cand = q + four_m * cnt[b] - 2 * block_deg[b] * d - d * d
            if top_q is None or cand > top_q:
                top_b, top_q = b, cand
        cand = q - d * d
        if top_q is None or cand > top_q:
            top_b, top_q = k, cand
        count += k + 1
        if best["q"] is None or top_q > best["q"]:
            labels[last] = top_b
            best["q"] = top_q
            best["labels"] = labels.copy()

    def rec(v, k, q):
        if v == last:
            place_last(k, q)
            return
        d = deg[v]
        cnt = [0] * (k + 1)
        for u in lower[v]:
            cnt[labels[u]] += 1
        for b in range(k + 1):
            labels[v] = b
            gain = four_m * cnt[b] - 2 * block_deg[b] * d - d * d
            block_deg[b] += d
            rec(v + 1, k + 1 if b == k else k, q + gain)
            block_deg[b] -= d

    if n == 1:
        best["q"], best["labels"], count = 0, [0], 1
    else:
        labels[0] = 0
        block_deg[0] = deg[0]
        rec(1, 1, -deg[0] * deg[0])
    exact = Fraction(best["q"], four_m * m)
    return OracleResult(float(exact), Clustering.from_labels(best["labels"]), count, exact)


def _two_part_values(g: Graph, inner, dsum):
    m = g.m
    two_m = 2 * m
    cut = dsum - 2 * inner
    other = m - cut - inner
    # 4m^2 * M, computed in integers: 4m(m_S + m_Sbar) - D_S^2 - D_Sbar^2
    return 2 * two_m * (inner + other) - dsum * dsum - (two_m - dsum) ** 2


def opt2_exact(g: Graph, max_n: int = OPT2_MAX_N) -> OracleResult:
    """Maximum modularity over clusterings with at most two communities.

    Node ``n-1`` is pinned to the second side, so every unordered 2-partition
    is visited once; the empty first side stands for the single community.
    """
    _check_budget(g, max_n, "opt2_exact")
    if g.m == 0:
        raise ValueError("modularity is undefined for a graph without edges")
    n = g.n
    if n == 1:
        return OracleResult(0.0, Clustering((range(1),)), 1, Fraction(0))
    sub = [mask & ((1 << (n - 1)) - 1) for mask in g.neighbor_masks[: n - 1]]
    best_q, best_mask, count = None, None, 0
    for masks, _, dsum, inner in subset_chunks(sub, g.degrees[: n - 1]):
        q = _two_part_values(g, inner, dsum).ravel()
        i = int(np.argmax(q))
        count += q.size
        if best_q is None or q[i] > best_q:
            best_q, best_mask = int(q[i]), int(masks.ravel()[i])
    exact = Fraction(best_q, 4 * g.m * g.m)
    if best_mask == 0:
        witness = Clustering((range(n),))
    else:
        witness = TwoPartition.from_set(g, mask_to_nodes(best_mask))
    return OracleResult(float(exact), witness, count, exact)


def sse_exact(g: Graph, size_lo: int, size_hi: int, max_n: int = SSE_MAX_N) -> OracleResult:
    """Minimum expansion over all node sets with ``size_lo <= |S| <= size_hi``."""
    _check_budget(g, max_n, "sse_exact")
    if not 1 <= size_lo <= size_hi <= g.n - 1:
        raise ValueError(f"size band [{size_lo}, {size_hi}] invalid for n={g.n}")
    best_phi, best_mask, count = None, None, 0
    for masks, size, dsum, inner in subset_chunks(g.neighbor_masks, g.degrees):
        ok = (size >= size_lo) & (size <= size_hi) & (dsum > 0)
        count += int(ok.sum())
        if not ok.any():
            continue
        with np.errstate(divide="ignore", invalid="ignore"):
            phi = np.where(ok, (dsum - 2 * inner) / np.where(ok, dsum, 1), np.inf).ravel()
        i = int(np.argmin(phi))
        if best_phi is None or phi[i] < best_phi:
            best_phi, best_mask = float(phi[i]), int(masks.ravel()[i])
    if best_mask is None:
        raise ValueError("no set in the size band has positive degree sum")
    nodes = frozenset(mask_to_nodes(best_mask))
    inner_edges = sum(1 for u, v in g.edges if u in nodes and v in nodes)
    vol = sum(g.degrees[v] for v in nodes)
    exact = Fraction(vol - 2 * inner_edges, vol)
    return OracleResult(best_phi, nodes, count, exact)
