"""Stateful exploration sessions and their HTTP/JSON surface.

:class:`ExplorationEngine` owns the loaded datasets, the optional surrogate
and the live sessions; it is framework-free so the CLI can drive the same
code paths without a server. :func:`create_app` wraps it in a FastAPI app.

Concurrency: datasets, normalization stats and the trained model are
immutable, so reads need no coordination. Each session carries its own lock;
a bounds update computes classification plus the optional fallback ranking
under that lock, so clients never observe a half-applied state.
"""

import threading
import uuid
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import filtering, neighbors, surrogate
from .data import Dataset, NormStats, compute_norm_stats, format_csv, normalize, subsample
from .errors import (
    ColumnMismatch,
    EmptyEvaluationSet,
    ExplorerError,
    ModelNotLoaded,
    PortInUse,
    UnknownDataset,
    UnknownRow,
    UnknownSession,
)

DEFAULT_DATASET = "default"
DEFAULT_PORT = 7341
DEFAULT_CURVE_SAMPLES = 51

LABEL_NAMES = {
    filtering.LABEL_MATCH: "match",
    filtering.LABEL_SOFT: "soft_match",
    filtering.LABEL_NO: "no_match",
}


@dataclass
class Session:
    """One exploration context: a served (possibly subsampled) view plus the
    latest bounds, classification and fallback ranking."""

    id: str
    dataset_name: str
    dataset: Dataset
    stats: NormStats
    norm_values: np.ndarray
    bounds: filtering.BoundsSpec = field(default_factory=lambda: filtering.BoundsSpec({}))
    tolerance: float = filtering.DEFAULT_TOLERANCE
    k: int = neighbors.DEFAULT_K
    classification: filtering.MatchClassification | None = None
    ranking: neighbors.NeighborRanking | None = None
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def row_ids(self) -> np.ndarray:
        return self.dataset.source_row_ids


class ExplorationEngine:
    """Sessions over immutable datasets, with the surrogate attached when one
    was loaded at startup."""

    def __init__(
        self,
        datasets: Mapping[str, Dataset],
        model: surrogate.MlpModel | None = None,
        default_dataset: str = DEFAULT_DATASET,
    ):
        if default_dataset not in datasets:
            raise UnknownDataset(default_dataset)
        self._datasets = dict(datasets)
        self._default_dataset = default_dataset
        self.model = model
        self._sessions: dict[str, Session] = {}
        self._registry_lock = threading.Lock()
        self._residual_cache: dict[str, dict | None] = {}

    # -- datasets -----------------------------------------------------------

    def dataset(self, name: str | None = None) -> Dataset:
        key = name or self._default_dataset
        try:
            return self._datasets[key]
        except KeyError:
            raise UnknownDataset(key) from None

    def columns_info(self, name: str | None = None) -> dict:
        ds = self.dataset(name)
        stats = compute_norm_stats(ds)
        return {
            "dataset": name or self._default_dataset,
            "row_count": ds.row_count,
            "columns": [
                {"name": c.name, "group": c.group.value, "units": c.units} for c in ds.columns
            ],
            "stats": stats.to_json(),
        }

    # -- session lifecycle --------------------------------------------------

    def create_session(
        self, dataset_name: str | None = None, n: int | None = None, seed: int = 0
    ) -> Session:
        base = self.dataset(dataset_name)
        served = subsample(base, n, seed) if n is not None else base
        stats = compute_norm_stats(served)
        session = Session(
            id=uuid.uuid4().hex,
            dataset_name=dataset_name or self._default_dataset,
            dataset=served,
            stats=stats,
            norm_values=normalize(served, stats),
        )
        with self._registry_lock:
            self._sessions[session.id] = session
        return session

    def session(self, session_id: str) -> Session:
        with self._registry_lock:
            try:
                return self._sessions[session_id]
            except KeyError:
                raise UnknownSession(session_id) from None

    # -- exploration --------------------------------------------------------

    def points(self, session_id: str) -> dict:
        s = self.session(session_id)
        return {
            "columns": list(s.dataset.column_names),
            "points": s.norm_values.tolist(),
            "source_row_ids": s.row_ids.tolist(),
        }

    def update_bounds(
        self,
        session_id: str,
        bounds: Mapping | filtering.BoundsSpec,
        tolerance: float | None = None,
        k: int | None = None,
    ) -> dict:
        s = self.session(session_id)
        if not isinstance(bounds, filtering.BoundsSpec):
            bounds = filtering.bounds_from_json(bounds, s.stats)
        with s.lock:
            if tolerance is not None:
                s.tolerance = tolerance
            if k is not None:
                s.k = k
            s.bounds = bounds
            # bounds are in original units, so classification runs on the raw table
            s.classification = filtering.classify(s.dataset.values, s.stats, bounds, s.tolerance)
            # fallback ranking exists iff the bounds are infeasible
            if s.classification.feasible:
                s.ranking = None
            else:
                target = neighbors.target_from_bounds(bounds)
                s.ranking = neighbors.top_k(s.norm_values, s.stats, target, s.k)
            return self._response_json(s)

    @staticmethod
    def _response_json(s: Session) -> dict:
        c = s.classification
        return {
            "labels": c.labels.tolist(),
            "label_names": {str(v): name for v, name in LABEL_NAMES.items()},
            "match_count": c.match_count,
            "soft_count": c.soft_count,
            "feasible": c.feasible,
            "tolerance": s.tolerance,
            "bounds": s.bounds.to_json(),
            "ranking": s.ranking.to_json(s.row_ids) if s.ranking is not None else None,
        }

    def sensitivity(
        self,
        session_id: str,
        axis: str,
        overrides: Mapping[str, float] | None = None,
        n_samples: int = DEFAULT_CURVE_SAMPLES,
    ) -> dict:
        if self.model is None:
            raise ModelNotLoaded("no surrogate model was loaded at startup")
        s = self.session(session_id)
        self.model.axis_index(axis)  # UnknownAxis before any stats lookup
        with s.lock:
            anchor, names = surrogate.composition_center(s.dataset)
            anchor = _align_anchor(anchor, names, self.model.input_names)
            idx = s.stats.index(axis)
            curve = surrogate.sensitivity_curve(
                self.model,
                anchor,
                axis,
                n_samples,
                axis_range=(s.stats.mins[idx], s.stats.maxs[idx]),
                overrides=overrides,
            )
        return curve.to_json()

    def export_rows(self, session_id: str, row_ids: Sequence[int]) -> str:
        s = self.session(session_id)
        with s.lock:
            lookup = {int(rid): pos for pos, rid in enumerate(s.row_ids)}
            positions = []
            for rid in row_ids:
                try:
                    positions.append(lookup[int(rid)])
                except KeyError:
                    raise UnknownRow(rid) from None
            selected = s.dataset.take_rows(np.array(positions, dtype=np.intp))
            return format_csv(selected, include_row_ids=True)

    # -- model --------------------------------------------------------------

    def model_info(self) -> dict:
        if self.model is None:
            return {"loaded": False, "layer_dims": None, "residual_report": None}
        key = self._default_dataset
        if key not in self._residual_cache:
            try:
                report = surrogate.max_normalized_residual(self.model, self.dataset())
                self._residual_cache[key] = report.to_json()
            except (ColumnMismatch, EmptyEvaluationSet):
                self._residual_cache[key] = None
        return {
            "loaded": True,
            "layer_dims": list(self.model.layer_dims),
            "residual_report": self._residual_cache[key],
        }


def _align_anchor(
    anchor: np.ndarray, names: Sequence[str], wanted: Sequence[str]
) -> np.ndarray:
    """Reorder the composition center to the model's input order."""
    if tuple(names) == tuple(wanted):
        return anchor
    positions = {name: i for i, name in enumerate(names)}
    missing = [n for n in wanted if n not in positions]
    if missing:
        raise ColumnMismatch(f"dataset lacks surrogate inputs: {', '.join(missing)}")
    return anchor[[positions[n] for n in wanted]]


# ---------------------------------------------------------------------------
# HTTP layer
# ---------------------------------------------------------------------------

# resource lookups that failed map to 404, everything else domain-level is 400
_STATUS_BY_ERROR = {
    UnknownSession: 404,
    UnknownDataset: 404,
    UnknownRow: 404,
    ModelNotLoaded: 409,
}


def _error_status(exc: ExplorerError) -> int:
    for cls, status in _STATUS_BY_ERROR.items():
        if isinstance(exc, cls):
            return status
    return 400


def create_app(engine: ExplorationEngine):
    """FastAPI application exposing the exploration API under /api."""
    from fastapi import FastAPI, Request
    from fastapi.middleware.cors import CORSMiddleware
    from fastapi.responses import JSONResponse, PlainTextResponse
    from pydantic import BaseModel

    class SessionBody(BaseModel):
        dataset: str | None = None
        n: int | None = None
        seed: int = 0

    class BoundsBody(BaseModel):
        bounds: dict[str, tuple[float | None, float | None]]
        tolerance: float | None = None
        k: int | None = None

    class SensitivityBody(BaseModel):
        axis: str
        overrides: dict[str, float] = {}
        n_samples: int = DEFAULT_CURVE_SAMPLES

    class ExportBody(BaseModel):
        rows: list[int]

    app = FastAPI(title="alloy-explorer", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    app.state.engine = engine

    @app.exception_handler(ExplorerError)
    async def _domain_error(_request: Request, exc: ExplorerError):
        return JSONResponse(
            status_code=_error_status(exc),
            content={"error": type(exc).__name__, "detail": str(exc)},
        )

    @app.get("/api/columns")
    def get_columns(dataset: str | None = None):
        return engine.columns_info(dataset)

    @app.post("/api/sessions")
    def post_session(body: SessionBody):
        session = engine.create_session(body.dataset, body.n, body.seed)
        return {"session_id": session.id, "row_count": session.dataset.row_count}

    @app.get("/api/sessions/{session_id}/points")
    def get_points(session_id: str):
        return engine.points(session_id)

    @app.post("/api/sessions/{session_id}/bounds")
    def post_bounds(session_id: str, body: BoundsBody):
        return engine.update_bounds(session_id, body.bounds, body.tolerance, body.k)

    @app.post("/api/sessions/{session_id}/sensitivity")
    def post_sensitivity(session_id: str, body: SensitivityBody):
        return engine.sensitivity(session_id, body.axis, body.overrides, body.n_samples)

    @app.post("/api/sessions/{session_id}/export")
    def post_export(session_id: str, body: ExportBody):
        csv_text = engine.export_rows(session_id, body.rows)
        return PlainTextResponse(csv_text, media_type="text/csv")

    @app.get("/api/model")
    def get_model():
        return engine.model_info()

    return app


def serve(engine: ExplorationEngine, host: str = "127.0.0.1", port: int = DEFAULT_PORT):
    """Run the API with uvicorn until interrupted."""
    import socket

    import uvicorn

    with socket.socket() as probe:
        try:
            probe.bind((host, port))
        except OSError as exc:
            raise PortInUse(port) from exc
    uvicorn.run(create_app(engine), host=host, port=port, log_level="warning")
