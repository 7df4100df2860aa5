"""Interactive inverse-design engine for alloy exploration.

Filter a composition/property table against target ranges with hard and
soft matching, fall back to normalized nearest-neighbor recommendation when
no candidate satisfies every bound, and sample gradient-based sensitivity
curves from a trained MLP surrogate. A session service exposes the whole
workflow over HTTP/JSON for the SPLOM browser client.
"""

from .data import (
    ColumnGroup,
    ColumnSpec,
    Dataset,
    NormStats,
    compute_norm_stats,
    load_csv,
    load_schema,
    normalize,
    subsample,
    write_csv,
    zero_fill_missing,
)
from .errors import ExplorerError
from .filtering import BoundsSpec, MatchClassification, classify, intersect
from .kernels import BACKEND as KERNEL_BACKEND
from .neighbors import NeighborRanking, TargetVector, target_from_bounds, top_k
from .service import ExplorationEngine, create_app
from .surrogate import (
    MlpModel,
    TrainConfig,
    forward,
    input_jacobian,
    load_model,
    max_normalized_residual,
    save_model,
    sensitivity_curve,
    train,
)
from .synthetic import synthesize_dataset

__version__ = "0.1.0"

__all__ = [
    "BoundsSpec",
    "ColumnGroup",
    "ColumnSpec",
    "Dataset",
    "ExplorationEngine",
    "ExplorerError",
    "KERNEL_BACKEND",
    "MatchClassification",
    "MlpModel",
    "NeighborRanking",
    "NormStats",
    "TargetVector",
    "TrainConfig",
    "classify",
    "compute_norm_stats",
    "create_app",
    "forward",
    "input_jacobian",
    "intersect",
    "load_csv",
    "load_model",
    "load_schema",
    "max_normalized_residual",
    "normalize",
    "save_model",
    "sensitivity_curve",
    "subsample",
    "synthesize_dataset",
    "target_from_bounds",
    "top_k",
    "train",
    "write_csv",
    "zero_fill_missing",
]
