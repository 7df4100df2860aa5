"""Feed-forward surrogate with PReLU hidden layers and exact input gradients.

The network maps standardized element fractions to standardized outputs
(weights W_l are (fan_out, fan_in), one learnable PReLU slope per hidden
layer). Predictions and Jacobians are exposed in original units: the
(de)standardization scale factors are folded into both. Jacobians come from
the chain rule, never from finite differences; finite differences appear only
in tests, as the independent check.

Training is plain mini-batch gradient descent with momentum on the mean
squared error of standardized outputs, deterministic for a fixed seed.
"""

from __future__ import annotations

import json
import struct
import time
import zlib
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .data import ColumnGroup, Dataset
from .errors import (
    ColumnMismatch,
    CorruptModelFile,
    EmptyDataset,
    EmptyEvaluationSet,
    NonFiniteInput,
    NonFiniteLoss,
    ShapeMismatch,
    TooFewSamples,
    UnknownAxis,
    VersionMismatch,
)

MODEL_MAGIC = b"ALXM"
MODEL_VERSION = 1

DEFAULT_HIDDEN_DIMS = (1024, 1024)
DEFAULT_PRELU_ALPHA = 0.25


def prelu(x, alpha: float):
    """x for x >= 0, alpha * x otherwise (elementwise)."""
    return np.where(x >= 0, x, alpha * x)


def prelu_grad(x, alpha: float):
    """Slope of prelu: 1 for x > 0, alpha for x < 0, alpha at exactly 0."""
    return np.where(x > 0, 1.0, alpha)


@dataclass
class MlpModel:
    """Trained surrogate: layer parameters plus standardization statistics.

    ``output_std`` holds the original-scale standard deviations the outputs
    were divided by during training, so max residuals reported in normalized
    units convert back by a plain multiply.
    """

    layer_dims: tuple[int, ...]
    weights: list[np.ndarray]
    biases: list[np.ndarray]
    prelu_alphas: np.ndarray
    input_names: tuple[str, ...]
    output_names: tuple[str, ...]
    input_mean: np.ndarray
    input_std: np.ndarray
    output_mean: np.ndarray
    output_std: np.ndarray

    def __post_init__(self):
        dims = self.layer_dims
        if len(dims) < 2:
            raise ShapeMismatch("need at least input and output layers")
        if len(self.weights) != len(dims) - 1 or len(self.biases) != len(dims) - 1:
            raise ShapeMismatch("one weight matrix and bias vector per layer transition")
        for l, (w, b) in enumerate(zip(self.weights, self.biases)):
            if w.shape != (dims[l + 1], dims[l]) or b.shape != (dims[l + 1],):
                raise ShapeMismatch(
                    f"layer {l}: expected W {dims[l + 1]}x{dims[l]}, got {w.shape}"
                )
        if self.prelu_alphas.shape != (len(dims) - 2,):
            raise ShapeMismatch("one PReLU slope per hidden layer")
        if len(self.input_names) != dims[0] or len(self.output_names) != dims[-1]:
            raise ShapeMismatch("input/output name counts must match layer dims")
        for arr in (self.input_mean, self.input_std):
            if arr.shape != (dims[0],):
                raise ShapeMismatch("input stats must have one entry per input")
        for arr in (self.output_mean, self.output_std):
            if arr.shape != (dims[-1],):
                raise ShapeMismatch("output stats must have one entry per output")
        if not all(np.isfinite(a).all() for a in self._all_arrays()):
            raise ShapeMismatch("model parameters must be finite")

    def _all_arrays(self) -> list[np.ndarray]:
        return [
            *self.weights,
            *self.biases,
            self.prelu_alphas,
            self.input_mean,
            self.input_std,
            self.output_mean,
            self.output_std,
        ]

    def freeze(self) -> "MlpModel":
        for arr in self._all_arrays():
            arr.flags.writeable = False
        return self

    @property
    def n_hidden(self) -> int:
        return len(self.layer_dims) - 2

    def axis_index(self, name: str) -> int:
        try:
            return self.input_names.index(name)
        except ValueError:
            raise UnknownAxis(name) from None


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 30
    batch_size: int = 256
    learning_rate: float = 1e-3
    momentum: float = 0.9
    seed: int = 0
    validation_fraction: float = 0.1
    hidden_dims: tuple[int, ...] = DEFAULT_HIDDEN_DIMS

    def __post_init__(self):
        if self.epochs <= 0 or self.batch_size <= 0 or self.learning_rate <= 0:
            raise ShapeMismatch("epochs, batch_size and learning_rate must be positive")
        if not 0.0 < self.validation_fraction < 1.0:
            raise ShapeMismatch("validation_fraction must lie in (0, 1)")
        if any(d <= 0 for d in self.hidden_dims):
            raise ShapeMismatch("hidden dims must be positive")


@dataclass(frozen=True)
class ResidualRow:
    name: str
    mean: float
    std: float
    normalized_max: float
    original_max: float


@dataclass(frozen=True)
class ResidualReport:
    """Per-output maximum residuals, normalized (units of output std) and in
    the original data scale, plus their average over outputs."""

    rows: tuple[ResidualRow, ...]
    average_normalized_max: float

    def to_json(self) -> dict:
        return {
            "outputs": [
                {
                    "name": r.name,
                    "mean": r.mean,
                    "std": r.std,
                    "max_residual_normalized": r.normalized_max,
                    "max_residual_original": r.original_max,
                }
                for r in self.rows
            ],
            "average_max_residual_normalized": self.average_normalized_max,
        }


@dataclass
class TrainReport:
    loss_history: list[float]
    duration_s: float
    n_train: int
    n_validation: int
    residuals_train: ResidualReport
    residuals_held_out: ResidualReport

    def to_json(self) -> dict:
        return {
            "loss_history": self.loss_history,
            "duration_s": self.duration_s,
            "n_train": self.n_train,
            "n_validation": self.n_validation,
            "residuals": {
                "in_sample": self.residuals_train.to_json(),
                "held_out": self.residuals_held_out.to_json(),
            },
        }


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def _standardize_input(model: MlpModel, x: np.ndarray) -> np.ndarray:
    return (x - model.input_mean) / model.input_std


def forward(model: MlpModel, x: np.ndarray) -> np.ndarray:
    """Predict original-unit outputs for one point (d,) or a batch (n, d)."""
    x = np.asarray(x, dtype=np.float64)
    if not np.isfinite(x).all():
        raise NonFiniteInput("surrogate input contains NaN or inf")
    single = x.ndim == 1
    if single:
        x = x[None, :]
    if x.shape[1] != model.layer_dims[0]:
        raise ShapeMismatch(f"expected {model.layer_dims[0]} inputs, got {x.shape[1]}")
    h = _standardize_input(model, x)
    for l in range(model.n_hidden):
        h = prelu(h @ model.weights[l].T + model.biases[l], model.prelu_alphas[l])
    y = h @ model.weights[-1].T + model.biases[-1]
    y = y * model.output_std + model.output_mean
    return y[0] if single else y


def input_jacobian(model: MlpModel, x: np.ndarray) -> np.ndarray:
    """Exact (n_outputs, n_inputs) Jacobian of :func:`forward` at ``x``.

    Reverse-mode accumulation through the layer chain, with the input and
    output standardization scales folded in, so entries are original output
    units per original input unit.
    """
    x = np.asarray(x, dtype=np.float64)
    if not np.isfinite(x).all():
        raise NonFiniteInput("surrogate input contains NaN or inf")
    if x.shape != (model.layer_dims[0],):
        raise ShapeMismatch(f"expected a single {model.layer_dims[0]}-dim point")
    h = _standardize_input(model, x)
    pre_acts = []
    for l in range(model.n_hidden):
        a = model.weights[l] @ h + model.biases[l]
        pre_acts.append(a)
        h = prelu(a, model.prelu_alphas[l])
    grad = model.weights[-1]
    for l in range(model.n_hidden - 1, -1, -1):
        grad = (grad * prelu_grad(pre_acts[l], model.prelu_alphas[l])) @ model.weights[l]
    return grad * model.output_std[:, None] / model.input_std[None, :]


def _directional_derivatives(model: MlpModel, points: np.ndarray, axis: int) -> np.ndarray:
    """Forward-mode tangent along one input axis for a batch of points.

    Mathematically the ``axis`` column of :func:`input_jacobian` at each
    point, computed in one batched sweep.
    """
    h = _standardize_input(model, points)
    tangent = np.broadcast_to(
        model.weights[0][:, axis] / model.input_std[axis], (points.shape[0], model.layer_dims[1])
    ).copy()
    for l in range(model.n_hidden):
        a = h @ model.weights[l].T + model.biases[l]
        slope = prelu_grad(a, model.prelu_alphas[l])
        if l > 0:
            tangent = tangent @ model.weights[l].T
        tangent = tangent * slope
        h = prelu(a, model.prelu_alphas[l])
    tangent = tangent @ model.weights[-1].T
    return tangent * model.output_std[None, :]


def max_normalized_residual(model: MlpModel, dataset: Dataset) -> ResidualReport:
    """Worst absolute prediction error per output over ``dataset``.

    normalized_max = max |prediction - truth| / output_std;
    original_max = normalized_max * output_std (the report's two residual
    columns are related by exactly that multiply).
    """
    X, Y = design_matrices(dataset, model.input_names, model.output_names)
    if X.shape[0] == 0:
        raise EmptyEvaluationSet("no rows to evaluate residuals on")
    predicted = forward(model, X)
    abs_err = np.abs(predicted - Y)
    normalized_max = abs_err.max(axis=0) / model.output_std
    rows = tuple(
        ResidualRow(
            name=name,
            mean=float(model.output_mean[j]),
            std=float(model.output_std[j]),
            normalized_max=float(normalized_max[j]),
            original_max=float(normalized_max[j] * model.output_std[j]),
        )
        for j, name in enumerate(model.output_names)
    )
    return ResidualReport(rows=rows, average_normalized_max=float(normalized_max.mean()))


def composition_center(dataset: Dataset) -> tuple[np.ndarray, tuple[str, ...]]:
    """Per-element arithmetic mean: the anchor point for sensitivity sweeps."""
    if dataset.row_count == 0:
        raise EmptyDataset("cannot take the composition center of an empty dataset")
    idx = dataset.group_indices(ColumnGroup.ELEMENT_FRACTION)
    names = tuple(dataset.columns[i].name for i in idx)
    return dataset.values[:, idx].mean(axis=0), names


@dataclass(frozen=True)
class SensitivityCurve:
    """Predictions and exact partial derivatives sampled along one input axis."""

    axis: str
    anchor: np.ndarray
    xs: np.ndarray
    outputs: np.ndarray      # (n_samples, n_outputs), original units
    derivatives: np.ndarray  # (n_samples, n_outputs), d output / d axis input
    input_names: tuple[str, ...]
    output_names: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "axis": self.axis,
            "anchor": {name: float(v) for name, v in zip(self.input_names, self.anchor)},
            "x": self.xs.tolist(),
            "outputs": {
                name: self.outputs[:, j].tolist() for j, name in enumerate(self.output_names)
            },
            "derivatives": {
                name: self.derivatives[:, j].tolist() for j, name in enumerate(self.output_names)
            },
        }


def sensitivity_curve(
    model: MlpModel,
    anchor: np.ndarray,
    axis: str,
    n_samples: int,
    axis_range: tuple[float, float],
    overrides: Mapping[str, float] | None = None,
) -> SensitivityCurve:
    """Sweep one input axis across ``axis_range``, holding the others at the
    (override-adjusted) anchor.

    Abscissae are ``n_samples`` equally spaced values including both range
    endpoints; each sample records the prediction and the axis column of the
    Jacobian there.
    """
    if n_samples < 2:
        raise TooFewSamples(f"need at least 2 samples, got {n_samples}")
    axis_idx = model.axis_index(axis)
    anchor = np.array(anchor, dtype=np.float64)
    if anchor.shape != (model.layer_dims[0],):
        raise ShapeMismatch("anchor must be one value per surrogate input")
    for name, value in (overrides or {}).items():
        anchor[model.axis_index(name)] = value
    lo, hi = axis_range
    # strictly increasing abscissae require a non-degenerate range
    if not (np.isfinite(lo) and np.isfinite(hi)) or lo >= hi:
        raise ShapeMismatch(f"invalid axis range [{lo}, {hi}]")
    xs = np.linspace(lo, hi, n_samples)
    points = np.tile(anchor, (n_samples, 1))
    points[:, axis_idx] = xs
    return SensitivityCurve(
        axis=axis,
        anchor=anchor,
        xs=xs,
        outputs=forward(model, points),
        derivatives=_directional_derivatives(model, points, axis_idx),
        input_names=model.input_names,
        output_names=model.output_names,
    )


# ---------------------------------------------------------------------------
# training
# ---------------------------------------------------------------------------

def design_matrices(
    dataset: Dataset,
    input_names: Sequence[str] | None = None,
    output_names: Sequence[str] | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """(inputs, outputs) matrices for the surrogate.

    Defaults: inputs are the element-fraction columns, outputs the property
    and microstructure columns, both in dataset order.
    """
    if input_names is None:
        input_names = dataset.group_names(ColumnGroup.ELEMENT_FRACTION)
    if output_names is None:
        output_names = dataset.group_names(ColumnGroup.PROPERTY) + dataset.group_names(
            ColumnGroup.MICROSTRUCTURE
        )
    present = set(dataset.column_names)
    missing = [n for n in (*input_names, *output_names) if n not in present]
    if missing:
        raise ColumnMismatch(f"dataset lacks surrogate columns: {', '.join(missing)}")
    in_idx = [dataset.column_index(n) for n in input_names]
    out_idx = [dataset.column_index(n) for n in output_names]
    return dataset.values[:, in_idx], dataset.values[:, out_idx]


def surrogate_io_names(dataset: Dataset) -> tuple[tuple[str, ...], tuple[str, ...]]:
    inputs = tuple(dataset.group_names(ColumnGroup.ELEMENT_FRACTION))
    outputs = tuple(
        dataset.group_names(ColumnGroup.PROPERTY) + dataset.group_names(ColumnGroup.MICROSTRUCTURE)
    )
    return inputs, outputs


def _safe_std(values: np.ndarray) -> np.ndarray:
    std = values.std(axis=0)
    return np.where(std > 0.0, std, 1.0)


def train(dataset: Dataset, config: TrainConfig) -> tuple[MlpModel, TrainReport]:
    """Fit the surrogate on a dataset's element -> output mapping.

    Standardizes both sides with training statistics, runs seeded mini-batch
    gradient descent with momentum on the standardized MSE, and reports max
    residuals on the held-out split and in sample. Raises
    :class:`NonFiniteLoss` if the loss diverges.
    """
    input_names, output_names = surrogate_io_names(dataset)
    if not input_names or not output_names:
        raise ShapeMismatch("dataset lacks element-fraction inputs or property outputs")
    X_all, Y_all = design_matrices(dataset, input_names, output_names)
    n = X_all.shape[0]
    if n < 2:
        raise ShapeMismatch("need at least 2 rows to split train/validation")

    rng = np.random.default_rng(config.seed)
    order = rng.permutation(n)
    n_val = max(1, int(round(config.validation_fraction * n)))
    n_train = n - n_val
    if n_train < 1:
        raise ShapeMismatch("validation fraction leaves no training rows")
    val_pos, train_pos = order[:n_val], order[n_val:]
    X_train, Y_train = X_all[train_pos], Y_all[train_pos]

    input_mean = X_train.mean(axis=0)
    input_std = _safe_std(X_train)
    output_mean = Y_train.mean(axis=0)
    output_std = _safe_std(Y_train)
    Xs = (X_train - input_mean) / input_std
    Ys = (Y_train - output_mean) / output_std

    dims = (len(input_names), *config.hidden_dims, len(output_names))
    weights, biases = [], []
    for l in range(len(dims) - 1):
        fan_in = dims[l]
        scale = np.sqrt(2.0 / fan_in) if l < len(dims) - 2 else np.sqrt(1.0 / fan_in)
        weights.append(rng.normal(0.0, scale, size=(dims[l + 1], dims[l])))
        biases.append(np.zeros(dims[l + 1]))
    alphas = np.full(len(dims) - 2, DEFAULT_PRELU_ALPHA)

    vel_w = [np.zeros_like(w) for w in weights]
    vel_b = [np.zeros_like(b) for b in biases]
    vel_a = np.zeros_like(alphas)
    n_hidden = len(dims) - 2

    started = time.perf_counter()
    loss_history: list[float] = []
    for epoch in range(config.epochs):
        perm = rng.permutation(n_train)
        epoch_loss = 0.0
        for start in range(0, n_train, config.batch_size):
            batch = perm[start : start + config.batch_size]
            xb, tb = Xs[batch], Ys[batch]

            # forward, keeping pre-activations for the backward pass
            pre_acts, hiddens = [], [xb]
            h = xb
            for l in range(n_hidden):
                a = h @ weights[l].T + biases[l]
                pre_acts.append(a)
                h = prelu(a, alphas[l])
                hiddens.append(h)
            out = h @ weights[-1].T + biases[-1]

            err = out - tb
            batch_loss = float((err * err).mean())
            epoch_loss += batch_loss * len(batch)

            # backward: mean over batch and outputs
            delta = 2.0 * err / err.size
            grads_w = [np.empty(0)] * len(weights)
            grads_b = [np.empty(0)] * len(biases)
            grads_a = np.zeros_like(alphas)
            grads_w[-1] = delta.T @ hiddens[-1]
            grads_b[-1] = delta.sum(axis=0)
            g_h = delta @ weights[-1]
            for l in range(n_hidden - 1, -1, -1):
                a = pre_acts[l]
                grads_a[l] = float((g_h * np.where(a < 0, a, 0.0)).sum())
                g_a = g_h * prelu_grad(a, alphas[l])
                grads_w[l] = g_a.T @ hiddens[l]
                grads_b[l] = g_a.sum(axis=0)
                if l > 0:
                    g_h = g_a @ weights[l]

            for l in range(len(weights)):
                vel_w[l] = config.momentum * vel_w[l] - config.learning_rate * grads_w[l]
                weights[l] += vel_w[l]
                vel_b[l] = config.momentum * vel_b[l] - config.learning_rate * grads_b[l]
                biases[l] += vel_b[l]
            vel_a = config.momentum * vel_a - config.learning_rate * grads_a
            alphas += vel_a

        epoch_loss /= n_train
        if not np.isfinite(epoch_loss):
            raise NonFiniteLoss(epoch)
        loss_history.append(epoch_loss)

    model = MlpModel(
        layer_dims=dims,
        weights=weights,
        biases=biases,
        prelu_alphas=alphas,
        input_names=input_names,
        output_names=output_names,
        input_mean=input_mean,
        input_std=input_std,
        output_mean=output_mean,
        output_std=output_std,
    ).freeze()

    report = TrainReport(
        loss_history=loss_history,
        duration_s=time.perf_counter() - started,
        n_train=n_train,
        n_validation=n_val,
        residuals_train=max_normalized_residual(model, dataset.take_rows(train_pos)),
        residuals_held_out=max_normalized_residual(model, dataset.take_rows(val_pos)),
    )
    return model, report


# ---------------------------------------------------------------------------
# persistence
# ---------------------------------------------------------------------------

def save_model(model: MlpModel) -> bytes:
    """Serialize to a self-contained binary envelope.

    Layout: magic, version (u32 LE), header length (u32 LE), JSON header
    (layer dims and column names), float64 LE payload (all layer weights,
    all biases, PReLU slopes, input mean/std, output mean/std), CRC32 of
    the payload.
    """
    header = json.dumps(
        {
            "layer_dims": list(model.layer_dims),
            "inputs": list(model.input_names),
            "outputs": list(model.output_names),
        }
    ).encode()
    payload = b"".join(np.ascontiguousarray(a, dtype="<f8").tobytes() for a in model._all_arrays())
    return b"".join(
        [
            MODEL_MAGIC,
            struct.pack("<II", MODEL_VERSION, len(header)),
            header,
            payload,
            struct.pack("<I", zlib.crc32(payload)),
        ]
    )


def load_model(blob: bytes) -> MlpModel:
    """Inverse of :func:`save_model`; every field round-trips bit-exactly."""
    if len(blob) < 12 or blob[:4] != MODEL_MAGIC:
        raise CorruptModelFile("not a surrogate model file")
    version, header_len = struct.unpack_from("<II", blob, 4)
    if version != MODEL_VERSION:
        raise VersionMismatch(f"model file version {version}, expected {MODEL_VERSION}")
    try:
        header = json.loads(blob[12 : 12 + header_len].decode())
        dims = tuple(int(d) for d in header["layer_dims"])
        inputs = tuple(header["inputs"])
        outputs = tuple(header["outputs"])
    except (ValueError, KeyError, UnicodeDecodeError):
        raise CorruptModelFile("unreadable model header") from None

    counts = [dims[l + 1] * dims[l] for l in range(len(dims) - 1)]
    counts.extend(dims[l + 1] for l in range(len(dims) - 1))
    counts.append(max(len(dims) - 2, 0))
    counts.extend([dims[0], dims[0], dims[-1], dims[-1]])
    payload_len = 8 * sum(counts)
    expected_len = 12 + header_len + payload_len + 4
    if len(blob) != expected_len:
        raise CorruptModelFile(f"model file has {len(blob)} bytes, expected {expected_len}")
    payload = blob[12 + header_len : 12 + header_len + payload_len]
    (crc,) = struct.unpack_from("<I", blob, expected_len - 4)
    if zlib.crc32(payload) != crc:
        raise CorruptModelFile("model payload checksum mismatch")

    arrays = []
    offset = 0
    for count in counts:
        arrays.append(np.frombuffer(payload, dtype="<f8", count=count, offset=offset).copy())
        offset += 8 * count
    it = iter(arrays)
    weights = [next(it).reshape(dims[l + 1], dims[l]) for l in range(len(dims) - 1)]
    biases = [next(it) for _ in range(len(dims) - 1)]
    alphas = next(it)
    return MlpModel(
        layer_dims=dims,
        weights=weights,
        biases=biases,
        prelu_alphas=alphas,
        input_names=inputs,
        output_names=outputs,
        input_mean=next(it),
        input_std=next(it),
        output_mean=next(it),
        output_std=next(it),
    ).freeze()
