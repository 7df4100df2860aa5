import numpy as np
import pytest

from alloy_explorer import surrogate
from alloy_explorer.data import ColumnGroup, ColumnSpec, Dataset
from alloy_explorer.errors import NonFiniteLoss, ShapeMismatch
from alloy_explorer.surrogate import TrainConfig, train
from helpers import linear_dataset, surrogate_dataset

SMALL = TrainConfig(epochs=8, batch_size=64, hidden_dims=(16, 16), seed=3)


def model_arrays(model):
    return [*model.weights, *model.biases, model.prelu_alphas,
            model.input_mean, model.input_std, model.output_mean, model.output_std]


class TestTrainBasics:
    def test_loss_decreases(self):
        ds, _, _ = linear_dataset(600, seed=0, n_in=4, n_out=3)
        _, report = train(ds, SMALL)
        assert len(report.loss_history) == SMALL.epochs
        assert report.loss_history[-1] < report.loss_history[0]
        assert report.duration_s > 0.0

    def test_split_arithmetic(self):
        ds, _, _ = linear_dataset(50, seed=1, n_in=3, n_out=2)
        _, report = train(ds, TrainConfig(epochs=1, hidden_dims=(4,), validation_fraction=0.1))
        assert report.n_validation == 5  # max(1, round(0.1 * 50))
        assert report.n_train == 45
        _, report = train(ds, TrainConfig(epochs=1, hidden_dims=(4,), validation_fraction=0.01))
        assert report.n_validation == 1  # floor of one held-out row

    def test_model_shape_and_names(self):
        ds, _, _ = linear_dataset(100, seed=2, n_in=4, n_out=3)
        model, _ = train(ds, SMALL)
        assert model.layer_dims == (4, 16, 16, 3)
        assert model.input_names == tuple(f"x{i}" for i in range(4))
        assert model.output_names == tuple(f"y{j}" for j in range(3))
        assert not model.weights[0].flags.writeable  # trained models come frozen

    def test_constant_target_is_reproduced(self):
        rng = np.random.default_rng(4)
        X = rng.uniform(-1, 1, size=(300, 3))
        Y = np.full((300, 2), [5.0, -2.0])
        cfg = TrainConfig(epochs=150, batch_size=32, learning_rate=0.05, hidden_dims=(8,), seed=0)
        model, report = train(surrogate_dataset(X, Y), cfg)
        preds = surrogate.forward(model, X)
        assert np.abs(preds - Y).max() < 1e-3
        assert report.residuals_held_out.average_normalized_max < 1e-3

    def test_linear_target_learned(self):
        ds, _, _ = linear_dataset(1500, seed=5, n_in=4, n_out=3)
        cfg = TrainConfig(epochs=300, batch_size=64, learning_rate=0.01, hidden_dims=(32, 32), seed=1)
        _, report = train(ds, cfg)
        assert report.residuals_held_out.average_normalized_max < 0.1

    def test_report_json_layout(self):
        ds, _, _ = linear_dataset(80, seed=6, n_in=3, n_out=2)
        _, report = train(ds, TrainConfig(epochs=2, hidden_dims=(4,)))
        blob = report.to_json()
        assert set(blob) == {"loss_history", "duration_s", "n_train", "n_validation", "residuals"}
        assert set(blob["residuals"]) == {"in_sample", "held_out"}
        assert len(blob["residuals"]["held_out"]["outputs"]) == 2


class TestDeterminism:
    def test_same_seed_bitwise_identical(self):
        ds, _, _ = linear_dataset(400, seed=7, n_in=4, n_out=3)
        m1, r1 = train(ds, SMALL)
        m2, r2 = train(ds, SMALL)
        for a, b in zip(model_arrays(m1), model_arrays(m2)):
            np.testing.assert_array_equal(a, b)
        assert r1.loss_history == r2.loss_history

    def test_seed_changes_weights(self):
        ds, _, _ = linear_dataset(400, seed=7, n_in=4, n_out=3)
        m1, _ = train(ds, SMALL)
        m2, _ = train(ds, TrainConfig(epochs=8, batch_size=64, hidden_dims=(16, 16), seed=4))
        assert not np.array_equal(m1.weights[0], m2.weights[0])


class TestTrainErrors:
    @pytest.mark.filterwarnings("ignore::RuntimeWarning")
    def test_diverging_loss_reports_epoch(self):
        ds, _, _ = linear_dataset(300, seed=8, n_in=4, n_out=3)
        cfg = TrainConfig(epochs=10, learning_rate=1e9, hidden_dims=(16,))
        with pytest.raises(NonFiniteLoss) as err:
            train(ds, cfg)
        assert err.value.epoch < 10

    def test_too_few_rows(self):
        ds, _, _ = linear_dataset(1, seed=9, n_in=3, n_out=2)
        with pytest.raises(ShapeMismatch):
            train(ds, SMALL)

    def test_missing_groups(self):
        ds = Dataset(
            columns=(ColumnSpec("a", ColumnGroup.PROPERTY), ColumnSpec("b", ColumnGroup.PROPERTY)),
            values=np.random.default_rng(0).normal(size=(10, 2)),
            source_row_ids=np.arange(10, dtype=np.int64),
        )
        with pytest.raises(ShapeMismatch):
            train(ds, SMALL)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"epochs": 0},
            {"batch_size": 0},
            {"learning_rate": 0.0},
            {"validation_fraction": 0.0},
            {"validation_fraction": 1.0},
            {"hidden_dims": (8, 0)},
        ],
    )
    def test_config_validation(self, kwargs):
        with pytest.raises(ShapeMismatch):
            TrainConfig(**kwargs)
