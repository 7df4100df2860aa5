"""Nearest-neighbour recommendation for infeasible constraint sets.

When no row satisfies every bound, the engine ranks all rows by Euclidean
distance to a target vector in normalized [0, 1] space. The target defaults
to the midpoints of the active intervals; saturation scores in [0, 1] drive
the orange gradient in the client (1 = closest).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .data import NormStats
from .errors import DimensionMismatch, EmptyBounds, EmptyTarget, InvalidCount, UnknownColumn
from .filtering import BoundsSpec

DEFAULT_K = 20


@dataclass(frozen=True)
class TargetVector:
    """Desired value per active column, in original units."""

    entries: dict[str, float]

    def __post_init__(self):
        for name, value in self.entries.items():
            if not np.isfinite(value):
                raise ValueError(f"target for {name!r} must be finite, got {value}")


@dataclass(frozen=True)
class NeighborRanking:
    """Top-k rows by distance, ascending; ties broken by row index.

    ``scores`` ramp linearly from 1 (nearest) to 0 (farthest returned entry);
    when all returned distances coincide every score is 1.
    """

    indices: np.ndarray
    distances: np.ndarray
    scores: np.ndarray
    k: int

    def __len__(self) -> int:
        return int(self.indices.size)

    def to_json(self, row_ids: np.ndarray | None = None) -> list[dict]:
        ids = row_ids[self.indices] if row_ids is not None else self.indices
        return [
            {"row_id": int(i), "distance": float(d), "score": float(s)}
            for i, d, s in zip(ids, self.distances, self.scores)
        ]


def target_from_bounds(bounds: BoundsSpec) -> TargetVector:
    """Interval midpoints (lo + hi) / 2 as the fallback target."""
    if bounds.is_empty():
        raise EmptyBounds("cannot derive a target from empty bounds")
    return TargetVector(entries={name: (lo + hi) / 2.0 for name, (lo, hi) in bounds.entries.items()})


def distance(row: np.ndarray, target: np.ndarray) -> float:
    """Euclidean distance over the active (already normalized) dimensions."""
    row = np.asarray(row, dtype=np.float64)
    target = np.asarray(target, dtype=np.float64)
    if row.shape != target.shape:
        raise DimensionMismatch(f"row has shape {row.shape}, target {target.shape}")
    diff = row - target
    return float(np.sqrt((diff * diff).sum()))


def normalize_target(target: TargetVector, stats: NormStats) -> tuple[np.ndarray, np.ndarray]:
    """(column indices, normalized coordinates) for the active dimensions.

    Targets are not clamped: a wish outside the data range keeps its true
    normalized coordinate. Constant columns map to 0.5 like the data does.
    """
    col_idx, coords = [], []
    for name, value in target.entries.items():
        if name not in stats.columns:
            raise UnknownColumn(name)
        i = stats.index(name)
        span = stats.maxs[i] - stats.mins[i]
        coords.append(0.5 if span == 0.0 else (value - stats.mins[i]) / span)
        col_idx.append(i)
    return np.asarray(col_idx, dtype=np.int64), np.asarray(coords, dtype=np.float64)


def top_k(
    norm_values: np.ndarray,
    stats: NormStats,
    target: TargetVector,
    k: int = DEFAULT_K,
) -> NeighborRanking:
    """Exact k nearest rows of the normalized table to ``target``.

    ``norm_values`` must be the table produced by :func:`alloy_explorer.data.normalize`
    with the same ``stats``. Returns min(k, row_count) entries.
    """
    if k < 1:
        raise InvalidCount(f"k must be >= 1, got {k}")
    if not target.entries:
        raise EmptyTarget("target vector has no active dimensions")
    col_idx, coords = normalize_target(target, stats)
    if norm_values.shape[0] == 0:
        empty = np.empty(0)
        return NeighborRanking(indices=np.empty(0, dtype=np.int64), distances=empty, scores=empty, k=k)
    indices, distances = kernels.select_nearest(
        np.ascontiguousarray(norm_values), col_idx, coords, int(k)
    )
    return NeighborRanking(indices=indices, distances=distances, scores=_scores(distances), k=k)


def _scores(distances: np.ndarray) -> np.ndarray:
    if distances.size == 0:
        return np.empty(0)
    d_min, d_max = distances[0], distances[-1]
    if d_max == d_min:
        return np.ones_like(distances)
    return 1.0 - (distances - d_min) / (d_max - d_min)
