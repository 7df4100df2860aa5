"""Numpy implementations of the per-event scan kernels.

These are the portable fallbacks for the compiled extension in
``_kernels.pyx``; semantics (labels, selected indices, distances, and
tie-breaking) must match it exactly. Inputs are C-contiguous float64/int64
arrays prepared by the calling module.
"""

from __future__ import annotations

import numpy as np

BACKEND = "numpy"


def classify_rows(
    values: np.ndarray,
    col_idx: np.ndarray,
    lo: np.ndarray,
    hi: np.ndarray,
    lo_soft: np.ndarray,
    hi_soft: np.ndarray,
) -> np.ndarray:
    """Label rows 0 (inside every hard interval), 1 (inside every widened
    interval), else 2. Zero active columns labels everything 0."""
    n = values.shape[0]
    if col_idx.size == 0:
        return np.zeros(n, dtype=np.uint8)
    sub = values[:, col_idx]
    labels = np.full(n, 2, dtype=np.uint8)
    soft = ((sub >= lo_soft) & (sub <= hi_soft)).all(axis=1)
    hard = ((sub >= lo) & (sub <= hi)).all(axis=1)
    labels[soft] = 1
    labels[hard] = 0
    return labels


def select_nearest(
    values: np.ndarray,
    col_idx: np.ndarray,
    target: np.ndarray,
    k: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Indices and Euclidean distances of the k rows closest to ``target``
    over the ``col_idx`` dimensions, sorted by (distance, row index)."""
    diffs = values[:, col_idx] - target
    dist = np.sqrt((diffs * diffs).sum(axis=1))
    k = min(k, values.shape[0])
    order = np.lexsort((np.arange(dist.size), dist))[:k]
    return order.astype(np.int64), dist[order]
