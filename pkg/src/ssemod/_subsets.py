"""Vectorised per-subset statistics over all bitmask subsets of a small graph.

Subset ``mask`` contains node ``v`` iff bit ``v`` is set. Statistics are
produced in row-major chunks so that flattening a chunk yields ascending
masks; consumers rely on that order for first-witness tie-breaking.
"""

from __future__ import annotations

import numpy as np

LOW_BITS = 12
ROW_CHUNK = 512


def _low_tables(nbr_masks, weights, nbits):
    """Size, weight sum and internal edge count of every subset of the low nodes."""
    size = np.zeros(1, dtype=np.int64)
    wsum = np.zeros(1, dtype=np.int64)
    inner = np.zeros(1, dtype=np.int64)
    for b in range(nbits):
        rest = np.arange(1 << b, dtype=np.int64)
        gain = np.bitwise_count(rest & (nbr_masks[b] & ((1 << b) - 1))).astype(np.int64)
        size = np.concatenate([size, size + 1])
        wsum = np.concatenate([wsum, wsum + weights[b]])
        inner = np.concatenate([inner, inner + gain])
    return size, wsum, inner


def subset_chunks(nbr_masks, weights):
    """Yield ``(masks, size, weight_sum, internal_edges)`` chunks.

    ``nbr_masks[v]`` is the neighbourhood bitmask of node ``v`` restricted to
    the enumerated nodes; ``weights[v]`` is the per-node weight summed into
    ``weight_sum`` (usually the degree in the ambient graph). Every returned
    array has shape ``(rows, 2**low)``.
    """
    n = len(nbr_masks)
    low = min(n, LOW_BITS)
    high = n - low
    low_mask = (1 << low) - 1
    nbr_masks = [int(x) for x in nbr_masks]
    weights = [int(x) for x in weights]

    l_size, l_w, l_in = _low_tables(nbr_masks, weights, low)
    lows = np.arange(1 << low, dtype=np.int64)
    # edges from each high node into every low subset
    cnt = np.stack(
        [np.bitwise_count(lows & (nbr_masks[low + j] & low_mask)).astype(np.float64) for j in range(high)]
    ) if high else np.zeros((0, 1 << low))

    hi_nbr = [(nbr_masks[low + j] >> low) for j in range(high)]
    h_size, h_w, h_in = _low_tables(hi_nbr, weights[low:], high)

    total = 1 << high
    for start in range(0, total, ROW_CHUNK):
        rows = np.arange(start, min(total, start + ROW_CHUNK), dtype=np.int64)
        if high:
            bits = ((rows[:, None] >> np.arange(high)) & 1).astype(np.float64)
            cross = np.rint(bits @ cnt).astype(np.int64)
        else:
            cross = np.zeros((len(rows), 1 << low), dtype=np.int64)
        masks = (rows[:, None] << low) | lows[None, :]
        size = h_size[rows][:, None] + l_size[None, :]
        wsum = h_w[rows][:, None] + l_w[None, :]
        inner = h_in[rows][:, None] + l_in[None, :] + cross
        yield masks, size, wsum, inner


def mask_to_nodes(mask: int) -> tuple:
    mask = int(mask)
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)
