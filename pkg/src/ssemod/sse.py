"""Small-set-expansion solvers and the repeated extraction of high-rank parts.

Two solvers with contract-level guarantees:

* :func:`sse_low_rank` returns a set whose size lies within the
  ``size_slack_lo``/``size_slack_hi`` window around a target, minimising
  expansion. Small residuals are searched exhaustively; larger ones by
  sweep cuts over directions drawn from the top eigenspace of the walk matrix.
* :func:`sse_high_rank_extract` returns a set of at most ``ceil(r**cap)``
  nodes with expansion within ``extract_phi_budget``, found by sweep cuts over
  the eigenvectors with ``|lambda| >= tau_extract``. Failure is reported,
  never papered over.

Expansion inside a residual view counts only real cut edges and divides by
``d |S|``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Union

import numpy as np

from ._subsets import mask_to_nodes, subset_chunks
from .errors import BudgetExceededError, ExtractionError, PreconditionError
from .graph import Graph
from .profile import DESK, ParamProfile
from .spectral import BOUNDARY_TOL, ResidualView, eigh, rank_cutoff, threshold_rank, walk_matrix

__all__ = [
    "SseResult",
    "ExtractionStep",
    "ExtractionTrace",
    "size_window",
    "size_cap",
    "sse_low_rank",
    "sse_high_rank_extract",
    "extract_partition",
    "MAX_DIRECTIONS",
    "MIN_SUBSPACE_DIM",
]

MAX_DIRECTIONS = 10_000
MIN_SUBSPACE_DIM = 3
_SWEEP_BATCH = 1024
_ROUND_DECIMALS = 10


@dataclass(frozen=True)
class SseResult:
    set: frozenset
    phi: float
    method: str
    size_window: tuple = None
    candidates: int = 0


@dataclass(frozen=True)
class ExtractionStep:
    residual_size: int
    rank: int
    size_cap: int
    part: frozenset
    phi: float


@dataclass
class ExtractionTrace:
    parts: list = field(default_factory=list)
    residual: frozenset = frozenset()
    steps: list = field(default_factory=list)
    final_rank: Optional[int] = None
    final_threshold: Optional[float] = None

    @property
    def k(self) -> int:
        return len(self.parts)

    def prefix_unions(self):
        acc = frozenset()
        for t in self.parts:
            acc = acc | t
            yield acc


def _as_view(obj: Union[Graph, ResidualView]) -> ResidualView:
    return obj if isinstance(obj, ResidualView) else ResidualView(obj)


def size_window(s_target: int, p: ParamProfile, r: int) -> tuple:
    """Integer sizes ``ceil(lo * s) .. floor(hi * s)``, clamped to ``[1, r - 1]``."""
    lo_f, hi_f = p.slack_fractions()
    lo = max(1, math.ceil(lo_f * s_target))
    hi = min(r - 1, math.floor(hi_f * s_target))
    return lo, hi


def size_cap(r: int, p: ParamProfile) -> int:
    return min(r, math.ceil(r ** p.size_cap_exponent))


# -- sweep machinery ---------------------------------------------------------


def _orders_from_vectors(vectors: np.ndarray) -> np.ndarray:
    """One descending sweep order per row; ties go to the smaller index."""
    vals = np.round(vectors, _ROUND_DECIMALS)
    idx = np.broadcast_to(np.arange(vals.shape[1]), vals.shape)
    return np.lexsort((idx, -vals), axis=-1) if vals.size else np.zeros(vals.shape, dtype=np.int64)


def _prefix_cuts(view: ResidualView, orders: np.ndarray) -> np.ndarray:
    """``cut[i, t]`` = real cut edges of the first ``t + 1`` nodes of order ``i``."""
    g = view.graph
    r = view.r
    deg = view.residual_degrees
    if g.m:
        edges = np.array(g.sorted_edges())
        eu, ev = edges[:, 0], edges[:, 1]
    out = np.empty(orders.shape, dtype=np.int64)
    for start in range(0, len(orders), _SWEEP_BATCH):
        block = orders[start : start + _SWEEP_BATCH]
        b = len(block)
        vol = np.cumsum(deg[block], axis=1)
        if g.m:
            pos = np.empty_like(block)
            np.put_along_axis(pos, block, np.arange(r)[None, :].repeat(b, 0), axis=1)
            closing = np.maximum(pos[:, eu], pos[:, ev]) + (np.arange(b) * r)[:, None]
            inner = np.bincount(closing.ravel(), minlength=b * r).reshape(b, r).cumsum(axis=1)
        else:
            inner = np.zeros_like(vol)
        out[start : start + b] = vol - 2 * inner
    return out


def _pick(view: ResidualView, orders, cuts, lo, hi, limit=None):
    """Best prefix over ``orders`` with size in ``[lo, hi]``.

    Ranked by expansion, then size, then lexicographic original ids. Returns
    ``(phi, local_nodes)`` or ``None`` when no prefix is at most ``limit``.
    """
    sizes = np.arange(lo, hi + 1)
    phi = cuts[:, lo - 1 : hi] / (view.d * sizes)[None, :]
    best = phi.min()
    if limit is not None and best > limit:
        return None
    rows, cols = np.nonzero(phi == best)
    seen = set()
    top = None
    for i, j in zip(rows, cols):
        size = int(sizes[j])
        nodes = tuple(sorted(int(v) for v in orders[i, :size]))
        if nodes in seen:
            continue
        seen.add(nodes)
        key = (size, nodes)
        if top is None or key < top:
            top = key
    return float(best), top[1]


# -- low threshold rank: target-size solver ----------------------------------


def _direction_net(k: int, max_directions: int, seed: Optional[int]) -> np.ndarray:
    """Unit directions in a k-dim subspace: the {-1,0,1}^k grid up to sign, or a seeded sample."""
    count = (3**k - 1) // 2
    if count <= max_directions:
        dirs = [c for c in itertools.product((-1, 0, 1), repeat=k) if any(c) and next(x for x in c if x) > 0]
        dirs = np.array(dirs, dtype=np.float64)
    elif seed is not None:
        dirs = np.random.default_rng(seed).standard_normal((max_directions, k))
    else:
        raise BudgetExceededError(
            f"direction grid for a {k}-dim subspace has {count} points (> {max_directions}); "
            "set a seed to sample the net instead"
        )
    return dirs / np.linalg.norm(dirs, axis=1, keepdims=True)


@lru_cache(maxsize=64)
def _subspace_sweeps(view: ResidualView, tau: float, min_dim: int, max_directions: int, seed):
    vals, vecs = eigh(walk_matrix(view))
    k = int(np.sum(vals >= tau - BOUNDARY_TOL))
    k = min(view.r, max(k, min_dim))
    dirs = _direction_net(k, max_directions, seed)
    vectors = dirs @ vecs[:, :k].T
    orders = _orders_from_vectors(np.concatenate([vectors, -vectors]))
    orders = np.unique(orders, axis=0)
    return orders, _prefix_cuts(view, orders)


def _exhaustive_window(view: ResidualView, lo: int, hi: int):
    g = view.graph
    best_phi, best_mask, count = None, None, 0
    for masks, size, dsum, inner in subset_chunks(g.neighbor_masks, view.residual_degrees):
        ok = (size >= lo) & (size <= hi)
        if not ok.any():
            continue
        count += int(ok.sum())
        phi = np.where(ok, (dsum - 2 * inner) / (view.d * np.maximum(size, 1)), np.inf).ravel()
        i = int(np.argmin(phi))
        if best_phi is None or phi[i] < best_phi:
            best_phi, best_mask = phi[i], int(masks.ravel()[i])
    return mask_to_nodes(best_mask), count


def sse_low_rank(
    view: Union[Graph, ResidualView],
    s_target: int,
    p: ParamProfile = DESK,
    *,
    max_directions: int = MAX_DIRECTIONS,
    min_dim: int = MIN_SUBSPACE_DIM,
) -> SseResult:
    """Find a set of size near ``s_target`` with small expansion.

    The size always lies in :func:`size_window`. Residuals with at most
    ``p.n_exact`` nodes are solved exactly, so there the expansion is the
    minimum over the window. Larger residuals use sweep cuts along a net of
    directions in the span of the eigenvectors with ``lambda >= p.tau_case``
    (padded to ``min_dim`` vectors).
    """
    view = _as_view(view)
    r = view.r
    if view.d == 0:
        raise PreconditionError("expansion is undefined on a 0-regular graph")
    if s_target < 1 or 2 * s_target > r:
        raise PreconditionError(f"s_target={s_target} must lie in [1, r/2] with r={r}")
    lo, hi = size_window(s_target, p, r)
    if lo > hi:
        raise ValueError(f"empty size window for s_target={s_target}, r={r}")
    if r <= p.n_exact:
        local, count = _exhaustive_window(view, lo, hi)
        method = "exhaustive"
    else:
        orders, cuts = _subspace_sweeps(view, p.tau_case, min_dim, max_directions, p.seed)
        _, local = _pick(view, orders, cuts, lo, hi)
        count = len(orders) * (hi - lo + 1)
        method = "subspace-enumeration"
    s = view.to_original(local)
    return SseResult(s, view.expansion(s), method, (lo, hi), count)


# -- high threshold rank: extraction -----------------------------------------


def sse_high_rank_extract(
    view: Union[Graph, ResidualView],
    p: ParamProfile = DESK,
    *,
    check_precondition: bool = True,
) -> SseResult:
    """Extract a small set with expansion at most ``p.extract_phi_budget``.

    Raises :class:`PreconditionError` when the residual's threshold rank is
    below ``r**gamma`` and :class:`ExtractionError` when no sweep prefix within
    the size cap meets the budget.
    """
    view = _as_view(view)
    r = view.r
    vals, vecs = eigh(walk_matrix(view))
    if check_precondition:
        rank = int(np.sum(np.abs(vals) > rank_cutoff(p.tau_extract)))
        if rank < r**p.gamma:
            raise PreconditionError(f"rank_{p.tau_extract}={rank} < r^gamma={r ** p.gamma:.4g} (r={r})")
    cap = size_cap(r, p)
    chosen = vecs[:, np.abs(vals) >= p.tau_extract - BOUNDARY_TOL].T
    orders = np.unique(_orders_from_vectors(np.concatenate([chosen, -chosen])), axis=0)
    found = None
    if len(orders):
        found = _pick(view, orders, _prefix_cuts(view, orders), 1, cap, limit=p.extract_phi_budget)
    if found is None:
        raise ExtractionError(
            f"no sweep set of size <= {cap} has expansion <= {p.extract_phi_budget} (r={r})"
        )
    s = view.to_original(found[1])
    return SseResult(s, view.expansion(s), "sweep", (1, cap), len(orders) * cap)


def extract_partition(g: Graph, p: ParamProfile = DESK) -> ExtractionTrace:
    """Peel off low-expansion sets while the residual keeps a high threshold rank.

    Stops once ``rank_{tau_case}(residual) < r**gamma`` or the residual is empty.
    Each step's residual is re-regularised with self-loops before its spectrum
    is taken.
    """
    view = ResidualView(g)
    trace = ExtractionTrace(residual=frozenset(range(g.n)), final_threshold=None)
    for _ in range(g.n):
        r = view.r
        rank = threshold_rank(view, p.tau_case)
        threshold = r**p.gamma
        if rank < threshold:
            trace.final_rank, trace.final_threshold = rank, threshold
            break
        try:
            res = sse_high_rank_extract(view, p)
        except (ExtractionError, PreconditionError) as exc:
            raise ExtractionError(f"extraction step {trace.k + 1} failed: {exc}", trace=trace) from exc
        trace.parts.append(res.set)
        trace.steps.append(ExtractionStep(r, rank, size_cap(r, p), res.set, res.phi))
        trace.residual = frozenset(view.nodes) - res.set
        if not trace.residual:
            break
        view = view.without(res.set)
    return trace
