"""Immutable column-grouped alloy tables.

The engine keeps one dense float64 matrix per dataset. Columns carry a
semantic group (scrap inputs, element fractions, microstructure features,
properties) declared in a small JSON schema; cells are plain numbers and an
empty CSV cell is recorded as NaN until :func:`zero_fill_missing` runs.
Everything downstream (filtering, ranking, the surrogate) reads these tables
without copying, so datasets and normalization stats are frozen after
construction.
"""

from __future__ import annotations

import csv
import enum
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    ColumnMismatch,
    EmptyDataset,
    EmptyFile,
    InvalidCount,
    MissingColumn,
    UnparseableCell,
)

logger = logging.getLogger(__name__)

ROW_ID_COLUMN = "source_row_id"


class ColumnGroup(enum.Enum):
    SCRAP_INPUT = "scrap_input"
    ELEMENT_FRACTION = "element_fraction"
    MICROSTRUCTURE = "microstructure"
    PROPERTY = "property"


@dataclass(frozen=True)
class ColumnSpec:
    name: str
    group: ColumnGroup
    units: str = ""


@dataclass(frozen=True)
class Dataset:
    """A dense rows x columns table plus provenance of each row.

    ``values`` uses NaN for missing cells; after preprocessing the table is
    total (no NaN). ``source_row_ids`` maps each stored row back to its index
    in the originally ingested file, so exports stay traceable through
    subsampling.
    """

    columns: tuple[ColumnSpec, ...]
    values: np.ndarray
    source_row_ids: np.ndarray

    def __post_init__(self):
        if self.values.ndim != 2 or self.values.shape[1] != len(self.columns):
            raise ColumnMismatch(
                f"values shape {self.values.shape} does not match {len(self.columns)} columns"
            )
        if self.source_row_ids.shape != (self.values.shape[0],):
            raise ColumnMismatch("source_row_ids length does not match row count")
        names = [c.name for c in self.columns]
        if len(set(names)) != len(names):
            raise ColumnMismatch("duplicate column names")
        self.values.flags.writeable = False
        self.source_row_ids.flags.writeable = False

    @property
    def row_count(self) -> int:
        return self.values.shape[0]

    @property
    def column_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.columns)

    @property
    def has_missing(self) -> bool:
        return bool(np.isnan(self.values).any())

    def column_index(self, name: str) -> int:
        for i, c in enumerate(self.columns):
            if c.name == name:
                return i
        raise ColumnMismatch(f"no column named {name!r}")

    def group_indices(self, group: ColumnGroup) -> list[int]:
        return [i for i, c in enumerate(self.columns) if c.group is group]

    def group_names(self, group: ColumnGroup) -> list[str]:
        return [c.name for c in self.columns if c.group is group]

    def take_rows(self, positions: np.ndarray) -> "Dataset":
        return Dataset(
            columns=self.columns,
            values=self.values[positions].copy(),
            source_row_ids=self.source_row_ids[positions].copy(),
        )


@dataclass(frozen=True)
class NormStats:
    """Per-column min/max used for [0, 1] scaling.

    A constant column (min == max) is degenerate: every value maps to 0.5, so
    the dimension carries no information in distances or filters.
    """

    columns: tuple[str, ...]
    mins: np.ndarray
    maxs: np.ndarray

    def __post_init__(self):
        if np.any(self.mins > self.maxs):
            raise ColumnMismatch("min > max in normalization stats")
        self.mins.flags.writeable = False
        self.maxs.flags.writeable = False

    def index(self, name: str) -> int:
        try:
            return self.columns.index(name)
        except ValueError:
            raise ColumnMismatch(f"no stats for column {name!r}") from None

    def spans(self) -> np.ndarray:
        return self.maxs - self.mins

    def normalize_value(self, name: str, x: float) -> float:
        i = self.index(name)
        span = self.maxs[i] - self.mins[i]
        if span == 0.0:
            return 0.5
        return min(1.0, max(0.0, (x - self.mins[i]) / span))

    def to_json(self) -> dict:
        return {
            name: [float(lo), float(hi)]
            for name, lo, hi in zip(self.columns, self.mins, self.maxs)
        }


# ---------------------------------------------------------------------------
# schema files
# ---------------------------------------------------------------------------

def load_schema(path: str | Path) -> list[ColumnSpec]:
    """Read a JSON schema mapping column name -> group (or -> {group, units})."""
    raw = json.loads(Path(path).read_text())
    return schema_from_json(raw)


def schema_from_json(raw: Mapping) -> list[ColumnSpec]:
    specs = []
    for name, entry in raw.items():
        if isinstance(entry, str):
            group, units = entry, ""
        else:
            group, units = entry["group"], entry.get("units", "")
        try:
            specs.append(ColumnSpec(name=name, group=ColumnGroup(group), units=units))
        except ValueError:
            valid = ", ".join(g.value for g in ColumnGroup)
            raise ColumnMismatch(f"unknown group {group!r} for column {name!r} (expected one of {valid})") from None
    return specs


def schema_to_json(schema: Sequence[ColumnSpec]) -> dict:
    return {c.name: {"group": c.group.value, "units": c.units} for c in schema}


def save_schema(schema: Sequence[ColumnSpec], path: str | Path) -> None:
    Path(path).write_text(json.dumps(schema_to_json(schema), indent=2) + "\n")


# ---------------------------------------------------------------------------
# CSV ingestion / export
# ---------------------------------------------------------------------------

def load_csv(path: str | Path, schema: Sequence[ColumnSpec]) -> Dataset:
    """Load a comma-separated file against ``schema``.

    The header must contain every schema column (extra columns are ignored);
    empty cells become NaN pending :func:`zero_fill_missing`. Row order is
    preserved and rows are numbered 0..n-1 as their source ids.
    """
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyFile(f"{path} has no header row") from None
        header = [h.strip() for h in header]
        positions = []
        for spec in schema:
            if spec.name not in header:
                raise MissingColumn(spec.name)
            positions.append(header.index(spec.name))

        rows: list[list[float]] = []
        for r, record in enumerate(reader):
            if not record:
                continue
            row = []
            for spec, pos in zip(schema, positions):
                text = record[pos].strip() if pos < len(record) else ""
                if text == "":
                    row.append(np.nan)
                    continue
                try:
                    row.append(float(text))
                except ValueError:
                    raise UnparseableCell(r, spec.name, text) from None
            rows.append(row)

    values = np.array(rows, dtype=np.float64).reshape(len(rows), len(schema))
    return Dataset(
        columns=tuple(schema),
        values=values,
        source_row_ids=np.arange(len(rows), dtype=np.int64),
    )


def write_csv(dataset: Dataset, path: str | Path, include_row_ids: bool = False) -> None:
    """Write the table back out in the same dialect (header + '.' decimals).

    Floats are rendered with ``repr`` so a write/load round trip reproduces
    every cell bit-exactly.
    """
    Path(path).write_text(format_csv(dataset, include_row_ids=include_row_ids))


def format_csv(dataset: Dataset, include_row_ids: bool = False) -> str:
    header = list(dataset.column_names)
    if include_row_ids:
        header = [ROW_ID_COLUMN] + header
    lines = [",".join(header)]
    for i in range(dataset.row_count):
        cells = [_format_cell(v) for v in dataset.values[i]]
        if include_row_ids:
            cells = [str(int(dataset.source_row_ids[i]))] + cells
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _format_cell(v: float) -> str:
    if np.isnan(v):
        return ""
    return repr(float(v))


# ---------------------------------------------------------------------------
# preprocessing
# ---------------------------------------------------------------------------

def zero_fill_missing(dataset: Dataset) -> Dataset:
    """Replace missing cells with zero so every downstream column is total.

    Fully missing columns (the usual case: phases that never form) are
    zero-filled silently; partially missing columns are filled too but logged,
    since that usually indicates a ragged source file.
    """
    mask = np.isnan(dataset.values)
    if not mask.any():
        return dataset
    per_column = mask.sum(axis=0)
    for i, count in enumerate(per_column):
        if count == 0:
            continue
        name = dataset.columns[i].name
        if count == dataset.row_count:
            logger.info("column %r is fully missing; zero-filled", name)
        else:
            logger.warning(
                "column %r has %d of %d cells missing; zero-filling them", name, count, dataset.row_count
            )
    values = dataset.values.copy()
    values[mask] = 0.0
    return Dataset(columns=dataset.columns, values=values, source_row_ids=dataset.source_row_ids)


def subsample(dataset: Dataset, n: int, seed: int) -> Dataset:
    """Uniform sample of ``n`` rows without replacement, preserving row order.

    Reservoir scheme (Algorithm R) driven by a seeded generator: the same
    (dataset, n, seed) always yields the same rows. ``n >= row_count`` returns
    the dataset unchanged.
    """
    if n <= 0:
        raise InvalidCount(f"subsample size must be >= 1, got {n}")
    total = dataset.row_count
    if n >= total:
        return dataset
    rng = np.random.default_rng(seed)
    reservoir = np.arange(n, dtype=np.int64)
    draws = rng.integers(low=0, high=np.arange(n, total) + 1)
    for offset, j in enumerate(draws):
        if j < n:
            reservoir[j] = n + offset
    reservoir.sort()
    return dataset.take_rows(reservoir)


def compute_norm_stats(dataset: Dataset) -> NormStats:
    if dataset.row_count == 0:
        raise EmptyDataset("cannot compute stats of an empty dataset")
    _require_total(dataset)
    return NormStats(
        columns=dataset.column_names,
        mins=dataset.values.min(axis=0).copy(),
        maxs=dataset.values.max(axis=0).copy(),
    )


def normalize(dataset: Dataset, stats: NormStats) -> np.ndarray:
    """Scale every cell to [0, 1] via (x - min) / (max - min).

    Values are clamped so stats computed on a different sample still yield a
    table inside the unit box; constant columns map to 0.5.
    """
    if stats.columns != dataset.column_names:
        raise ColumnMismatch("stats were computed for a different column set")
    _require_total(dataset)
    spans = stats.spans()
    safe = np.where(spans > 0.0, spans, 1.0)
    out = (dataset.values - stats.mins) / safe
    out = np.clip(out, 0.0, 1.0)
    out[:, spans == 0.0] = 0.5
    return np.ascontiguousarray(out)


def denormalize(normalized: np.ndarray, stats: NormStats) -> np.ndarray:
    """Inverse of :func:`normalize` (constant columns recover their min)."""
    return stats.mins + normalized * stats.spans()


def column_means_stds(dataset: Dataset) -> tuple[np.ndarray, np.ndarray]:
    """Per-column mean and population standard deviation."""
    if dataset.row_count == 0:
        raise EmptyDataset("cannot compute stats of an empty dataset")
    _require_total(dataset)
    return dataset.values.mean(axis=0), dataset.values.std(axis=0)


def _require_total(dataset: Dataset) -> None:
    if dataset.has_missing:
        raise ValueError("dataset still has missing cells; run zero_fill_missing first")
