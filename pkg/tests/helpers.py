"""Shared builders and straight-line reference implementations.

The reference code here deliberately avoids the library's vectorized paths
(plain Python loops over explicit indices) so tests compare two independent
realizations of the same arithmetic.
"""

import numpy as np

from alloy_explorer.data import ColumnGroup, ColumnSpec, Dataset
from alloy_explorer.surrogate import MlpModel


def random_model(seed, dims=(5, 8, 7, 4), alpha=0.2) -> MlpModel:
    rng = np.random.default_rng(seed)
    weights = [0.6 * rng.normal(size=(dims[l + 1], dims[l])) for l in range(len(dims) - 1)]
    biases = [0.2 * rng.normal(size=dims[l + 1]) for l in range(len(dims) - 1)]
    return MlpModel(
        layer_dims=tuple(dims),
        weights=weights,
        biases=biases,
        prelu_alphas=np.full(len(dims) - 2, float(alpha)),
        input_names=tuple(f"x{i}" for i in range(dims[0])),
        output_names=tuple(f"y{j}" for j in range(dims[-1])),
        input_mean=rng.normal(size=dims[0]),
        input_std=rng.uniform(0.5, 2.0, size=dims[0]),
        output_mean=rng.normal(size=dims[-1]),
        output_std=rng.uniform(0.5, 2.0, size=dims[-1]),
    )


def forward_reference(model: MlpModel, x) -> list:
    """Loop-by-loop reimplementation of the forward pass."""
    h = [(float(x[i]) - model.input_mean[i]) / model.input_std[i] for i in range(len(x))]
    for layer in range(len(model.layer_dims) - 1):
        W, b = model.weights[layer], model.biases[layer]
        nxt = []
        for r in range(W.shape[0]):
            acc = float(b[r])
            for c in range(W.shape[1]):
                acc += float(W[r, c]) * h[c]
            if layer < len(model.layer_dims) - 2 and acc < 0:
                acc *= float(model.prelu_alphas[layer])
            nxt.append(acc)
        h = nxt
    return [h[j] * float(model.output_std[j]) + float(model.output_mean[j]) for j in range(len(h))]


def pre_activations(model: MlpModel, x) -> list:
    """Hidden-layer pre-activations at x (for kink exclusion in FD checks)."""
    h = (np.asarray(x) - model.input_mean) / model.input_std
    acts = []
    for layer in range(len(model.layer_dims) - 2):
        a = model.weights[layer] @ h + model.biases[layer]
        acts.append(a)
        h = np.where(a >= 0, a, model.prelu_alphas[layer] * a)
    return acts


def surrogate_dataset(X, Y, input_names=None, output_names=None) -> Dataset:
    """Dataset with element-fraction inputs and property outputs."""
    X = np.asarray(X, dtype=np.float64)
    Y = np.asarray(Y, dtype=np.float64)
    if input_names is None:
        input_names = [f"x{i}" for i in range(X.shape[1])]
    if output_names is None:
        output_names = [f"y{j}" for j in range(Y.shape[1])]
    columns = tuple(
        [ColumnSpec(n, ColumnGroup.ELEMENT_FRACTION) for n in input_names]
        + [ColumnSpec(n, ColumnGroup.PROPERTY) for n in output_names]
    )
    values = np.hstack([X, Y])
    return Dataset(
        columns=columns,
        values=values,
        source_row_ids=np.arange(values.shape[0], dtype=np.int64),
    )


def linear_dataset(n, seed, n_in=12, n_out=20):
    """Noiseless affine ground truth y = A x + b on uniform inputs."""
    rng = np.random.default_rng(seed)
    X = rng.uniform(-1.0, 1.0, size=(n, n_in))
    A = rng.normal(size=(n_out, n_in))
    b = rng.normal(size=n_out)
    Y = X @ A.T + b
    return surrogate_dataset(X, Y), A, b
