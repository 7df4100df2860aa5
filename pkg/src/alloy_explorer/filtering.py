"""Classify rows against user-selected property bounds.

A row is a Match when every active column sits inside its closed interval,
a SoftMatch when it only sits inside the interval widened by
``tolerance * (column max - column min)`` on each side, and a NoMatch
otherwise. Bounds are expressed in original units; the widening uses each
column's full data range, so the tolerance reads as a fraction of the
normalized [0, 1] axis.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

import numpy as np

from . import kernels
from .data import NormStats
from .errors import NegativeTolerance, UnknownColumn

LABEL_MATCH = 0
LABEL_SOFT = 1
LABEL_NO = 2

DEFAULT_TOLERANCE = 0.05


@dataclass(frozen=True)
class BoundsSpec:
    """Per-column closed intervals [lo, hi] in original units.

    The active set is exactly the mapping's keys. Intervals with lo > hi are
    legal (they arise from :func:`intersect` on contradictory specs) and match
    nothing in that dimension.
    """

    entries: dict[str, tuple[float, float]]

    def __post_init__(self):
        for name, (lo, hi) in self.entries.items():
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise ValueError(f"bounds for {name!r} must be finite, got [{lo}, {hi}]")

    def is_empty(self) -> bool:
        return not self.entries

    def to_json(self) -> dict:
        return {name: [lo, hi] for name, (lo, hi) in self.entries.items()}


def bounds_from_json(obj: Mapping, stats: NormStats | None = None) -> BoundsSpec:
    """Parse ``{column: [lo, hi], ...}``.

    A null endpoint means "open on that side" and resolves to the column's
    data min/max, which requires ``stats``.
    """
    entries: dict[str, tuple[float, float]] = {}
    for name, interval in obj.items():
        lo, hi = interval
        if lo is None or hi is None:
            if stats is None:
                raise ValueError(f"open-ended bound for {name!r} needs normalization stats to resolve")
            i = stats.index(name)
            lo = float(stats.mins[i]) if lo is None else float(lo)
            hi = float(stats.maxs[i]) if hi is None else float(hi)
        entries[name] = (float(lo), float(hi))
    return BoundsSpec(entries=entries)


def load_bounds_file(path: str | Path, stats: NormStats | None = None) -> tuple[BoundsSpec, float]:
    """Read a bounds JSON file.

    Accepts either a bare ``{column: [lo, hi]}`` object or an envelope
    ``{"bounds": {...}, "tolerance": t}``; returns (bounds, tolerance) with
    the default tolerance when the file does not carry one.
    """
    raw = json.loads(Path(path).read_text())
    if "bounds" in raw:
        tolerance = float(raw.get("tolerance", DEFAULT_TOLERANCE))
        return bounds_from_json(raw["bounds"], stats), tolerance
    return bounds_from_json(raw, stats), DEFAULT_TOLERANCE


@dataclass(frozen=True)
class MatchClassification:
    """Per-row labels plus the counts driving the fallback decision."""

    labels: np.ndarray  # uint8, LABEL_MATCH / LABEL_SOFT / LABEL_NO
    match_count: int
    soft_count: int

    @property
    def feasible(self) -> bool:
        return self.match_count > 0

    def to_json(self) -> dict:
        return {
            "labels": self.labels.tolist(),
            "match_count": self.match_count,
            "soft_count": self.soft_count,
            "feasible": self.feasible,
        }


def classify(
    values: np.ndarray,
    stats: NormStats,
    bounds: BoundsSpec,
    tolerance: float = DEFAULT_TOLERANCE,
) -> MatchClassification:
    """Label every row of ``values`` (original units, columns per ``stats``).

    Empty bounds match everything. ``tolerance`` widens each interval by that
    fraction of the column's (max - min) on both sides for the SoftMatch band.
    """
    if tolerance < 0:
        raise NegativeTolerance(f"tolerance must be >= 0, got {tolerance}")
    col_idx, lo, hi = _resolve(bounds, stats)
    spans = stats.spans()[col_idx] if col_idx.size else np.empty(0)
    lo_soft = lo - tolerance * spans
    hi_soft = hi + tolerance * spans
    labels = kernels.classify_rows(
        np.ascontiguousarray(values), col_idx, lo, hi, lo_soft, hi_soft
    )
    return MatchClassification(
        labels=labels,
        match_count=int((labels == LABEL_MATCH).sum()),
        soft_count=int((labels == LABEL_SOFT).sum()),
    )


def intersect(a: BoundsSpec, b: BoundsSpec) -> BoundsSpec:
    """Per-column interval intersection; disjoint keys pass through.

    A contradictory column is kept as an empty interval (lo > hi), which
    :func:`classify` treats as matching nothing in that dimension.
    """
    entries = dict(a.entries)
    for name, (lo, hi) in b.entries.items():
        if name in entries:
            cur_lo, cur_hi = entries[name]
            entries[name] = (max(cur_lo, lo), min(cur_hi, hi))
        else:
            entries[name] = (lo, hi)
    return BoundsSpec(entries=entries)


def _resolve(bounds: BoundsSpec, stats: NormStats) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    col_idx, lo, hi = [], [], []
    for name, (l, h) in bounds.entries.items():
        if name not in stats.columns:
            raise UnknownColumn(name)
        col_idx.append(stats.index(name))
        lo.append(l)
        hi.append(h)
    return (
        np.asarray(col_idx, dtype=np.int64),
        np.asarray(lo, dtype=np.float64),
        np.asarray(hi, dtype=np.float64),
    )
