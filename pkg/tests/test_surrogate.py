import numpy as np
import pytest

from alloy_explorer import surrogate
from alloy_explorer.data import ColumnGroup, ColumnSpec, Dataset
from alloy_explorer.errors import (
    ColumnMismatch,
    EmptyDataset,
    EmptyEvaluationSet,
    NonFiniteInput,
    ShapeMismatch,
    TooFewSamples,
    UnknownAxis,
)
from helpers import forward_reference, pre_activations, random_model, surrogate_dataset


class TestPrelu:
    def test_positive_branch(self):
        assert surrogate.prelu(3.0, 0.25) == 3.0

    def test_negative_branch(self):
        assert surrogate.prelu(-2.0, 0.25) == -0.5

    def test_zero_and_slope_at_zero(self):
        assert surrogate.prelu(0.0, 0.25) == 0.0
        assert surrogate.prelu_grad(0.0, 0.25) == 0.25

    def test_vectorized(self):
        np.testing.assert_allclose(
            surrogate.prelu(np.array([-4.0, 0.0, 2.0]), 0.5), [-2.0, 0.0, 2.0]
        )


class TestForward:
    def test_bias_only_network(self):
        # zero weights: the input is irrelevant and the output collapses to
        # the destandardized final bias
        model = random_model(0)
        for w in model.weights:
            w[:] = 0.0
        expected = model.biases[-1] * model.output_std + model.output_mean
        for x in (np.zeros(model.layer_dims[0]), np.full(model.layer_dims[0], 7.0)):
            np.testing.assert_allclose(surrogate.forward(model, x), expected, rtol=1e-12)

    def test_linear_reduction_matches_affine_composition(self):
        model = random_model(1, alpha=1.0)
        x = np.random.default_rng(5).normal(size=model.layer_dims[0])
        xs = (x - model.input_mean) / model.input_std
        h = xs
        for W, b in zip(model.weights, model.biases):
            h = W @ h + b
        expected = h * model.output_std + model.output_mean
        np.testing.assert_allclose(surrogate.forward(model, x), expected, rtol=1e-10)

    @pytest.mark.parametrize("seed", range(4))
    def test_matches_straight_line_reference(self, seed):
        model = random_model(seed)
        rng = np.random.default_rng(100 + seed)
        for _ in range(25):
            x = rng.normal(size=model.layer_dims[0]) * 2.0
            np.testing.assert_allclose(
                surrogate.forward(model, x), forward_reference(model, x), rtol=1e-10
            )

    def test_batch_agrees_with_single(self):
        model = random_model(2)
        X = np.random.default_rng(0).normal(size=(10, model.layer_dims[0]))
        batch = surrogate.forward(model, X)
        for i in range(10):
            np.testing.assert_allclose(batch[i], surrogate.forward(model, X[i]), rtol=1e-12)

    def test_non_finite_input_rejected(self):
        model = random_model(3)
        bad = np.zeros(model.layer_dims[0])
        bad[2] = np.nan
        with pytest.raises(NonFiniteInput):
            surrogate.forward(model, bad)

    def test_standardized_mean_input(self):
        # feeding the stored input mean standardizes to the zero vector
        model = random_model(4)
        x = model.input_mean.copy()
        h = np.zeros(model.layer_dims[0])
        for layer in range(len(model.layer_dims) - 2):
            h = surrogate.prelu(model.weights[layer] @ h + model.biases[layer], model.prelu_alphas[layer])
        expected = (model.weights[-1] @ h + model.biases[-1]) * model.output_std + model.output_mean
        np.testing.assert_allclose(surrogate.forward(model, x), expected, rtol=1e-12)


class TestInputJacobian:
    def test_zero_weights_zero_jacobian(self):
        model = random_model(0)
        for w in model.weights:
            w[:] = 0.0
        J = surrogate.input_jacobian(model, np.ones(model.layer_dims[0]))
        np.testing.assert_array_equal(J, np.zeros_like(J))

    def test_linear_reduction_closed_form(self):
        model = random_model(1, alpha=1.0)
        W = model.weights
        product = W[-1]
        for layer in range(len(W) - 2, -1, -1):
            product = product @ W[layer]
        expected = model.output_std[:, None] * product / model.input_std[None, :]
        x = np.random.default_rng(9).normal(size=model.layer_dims[0])
        np.testing.assert_allclose(surrogate.input_jacobian(model, x), expected, rtol=1e-10)
        # and it is input independent
        np.testing.assert_allclose(
            surrogate.input_jacobian(model, x + 3.0), expected, rtol=1e-10
        )

    @pytest.mark.parametrize("seed", range(3))
    def test_matches_central_finite_differences(self, seed):
        model = random_model(seed, dims=(6, 10, 9, 5))
        rng = np.random.default_rng(200 + seed)
        checked = 0
        for _ in range(20):
            x = rng.normal(size=model.layer_dims[0]) * 1.5
            if min(np.abs(a).min() for a in pre_activations(model, x)) < 1e-6:
                continue  # kink-adjacent, excluded by contract
            J = surrogate.input_jacobian(model, x)
            for i in range(model.layer_dims[0]):
                step = 1e-5 * model.input_std[i]  # 1e-5 in standardized units
                e = np.zeros_like(x)
                e[i] = step
                fd = (surrogate.forward(model, x + e) - surrogate.forward(model, x - e)) / (2 * step)
                np.testing.assert_allclose(J[:, i], fd, rtol=1e-4, atol=1e-6)
            checked += 1
        assert checked >= 15

    def test_directional_derivative_equals_jacobian_column(self):
        model = random_model(7)
        X = np.random.default_rng(3).normal(size=(12, model.layer_dims[0]))
        for axis in range(model.layer_dims[0]):
            tangents = surrogate._directional_derivatives(model, X, axis)
            for i in range(X.shape[0]):
                J = surrogate.input_jacobian(model, X[i])
                np.testing.assert_allclose(tangents[i], J[:, axis], rtol=1e-10, atol=1e-12)


class TestSensitivityCurve:
    def test_grid_contract(self):
        model = random_model(0)
        anchor = model.input_mean.copy()
        curve = surrogate.sensitivity_curve(model, anchor, "x0", 51, axis_range=(-2.0, 3.0))
        assert curve.xs.shape == (51,)
        assert curve.xs[0] == -2.0 and curve.xs[-1] == 3.0
        assert np.all(np.diff(curve.xs) > 0)
        assert curve.outputs.shape == (51, model.layer_dims[-1])
        assert curve.derivatives.shape == (51, model.layer_dims[-1])

    def test_two_samples_hit_range_ends(self):
        model = random_model(0)
        curve = surrogate.sensitivity_curve(model, model.input_mean, "x1", 2, axis_range=(0.0, 1.0))
        np.testing.assert_array_equal(curve.xs, [0.0, 1.0])

    def test_linear_model_gives_straight_lines_and_constant_derivative(self):
        model = random_model(2, alpha=1.0)
        curve = surrogate.sensitivity_curve(model, model.input_mean, "x0", 21, axis_range=(-1.0, 1.0))
        second_diff = np.diff(curve.outputs, n=2, axis=0)
        assert np.abs(second_diff).max() < 1e-9
        spread = np.abs(curve.derivatives - curve.derivatives[0]).max()
        assert spread < 1e-9 * np.abs(curve.derivatives[0]).max()

    def test_derivatives_match_on_curve_finite_differences(self):
        model = random_model(5, dims=(4, 12, 10, 3))
        anchor = model.input_mean * 0.5
        curve = surrogate.sensitivity_curve(model, anchor, "x2", 401, axis_range=(-2.0, 2.0))
        xs, ys, dy = curve.xs, curve.outputs, curve.derivatives
        step = xs[1] - xs[0]
        left = (ys[1:-1] - ys[:-2]) / step
        right = (ys[2:] - ys[1:-1]) / step
        central = (ys[2:] - ys[:-2]) / (2 * step)
        # a PReLU net is piecewise linear along the sweep: wherever the two
        # one-sided slopes agree there is no kink and the stored derivative
        # must equal the central difference
        smooth = np.all(np.isclose(left, right, rtol=1e-7, atol=1e-9), axis=1)
        assert smooth.sum() > 0.8 * smooth.size
        np.testing.assert_allclose(dy[1:-1][smooth], central[smooth], rtol=1e-4, atol=1e-8)

    def test_overrides_shift_anchor_before_sweep(self):
        model = random_model(6)
        anchor = model.input_mean.copy()
        plain = surrogate.sensitivity_curve(model, anchor, "x0", 5, axis_range=(0.0, 1.0))
        shifted = surrogate.sensitivity_curve(
            model, anchor, "x0", 5, axis_range=(0.0, 1.0), overrides={"x3": anchor[3] + 0.1}
        )
        assert shifted.anchor[3] == pytest.approx(anchor[3] + 0.1)
        assert not np.allclose(plain.outputs, shifted.outputs)
        # overriding the swept axis itself has no effect on the sweep
        override_axis = surrogate.sensitivity_curve(
            model, anchor, "x0", 5, axis_range=(0.0, 1.0), overrides={"x0": 99.0}
        )
        np.testing.assert_array_equal(override_axis.outputs, plain.outputs)

    def test_unknown_axis(self):
        model = random_model(0)
        with pytest.raises(UnknownAxis):
            surrogate.sensitivity_curve(model, model.input_mean, "bogus", 5, axis_range=(0, 1))
        with pytest.raises(UnknownAxis):
            surrogate.sensitivity_curve(
                model, model.input_mean, "x0", 5, axis_range=(0, 1), overrides={"bogus": 1.0}
            )

    def test_too_few_samples(self):
        model = random_model(0)
        with pytest.raises(TooFewSamples):
            surrogate.sensitivity_curve(model, model.input_mean, "x0", 1, axis_range=(0, 1))

    def test_degenerate_range_rejected(self):
        model = random_model(0)
        with pytest.raises(ShapeMismatch):
            surrogate.sensitivity_curve(model, model.input_mean, "x0", 5, axis_range=(1.0, 1.0))


class TestResiduals:
    def test_perfect_model_zero_residuals(self):
        model = random_model(3)
        X = np.random.default_rng(0).normal(size=(40, model.layer_dims[0]))
        Y = surrogate.forward(model, X)
        report = surrogate.max_normalized_residual(model, surrogate_dataset(X, Y))
        assert report.average_normalized_max == 0.0
        assert all(r.normalized_max == 0.0 and r.original_max == 0.0 for r in report.rows)

    def test_residual_identity_and_known_rows(self):
        # the published-table relationship: original = normalized x std
        assert 2.9248 * 0.0637 == pytest.approx(0.1863, abs=5e-5)
        assert 0.3264 * 0.0162 == pytest.approx(0.0053, abs=5e-5)
        model = random_model(4)
        X = np.random.default_rng(1).normal(size=(30, model.layer_dims[0]))
        Y = surrogate.forward(model, X) + np.random.default_rng(2).normal(size=(30, model.layer_dims[-1]))
        report = surrogate.max_normalized_residual(model, surrogate_dataset(X, Y))
        for row in report.rows:
            assert row.original_max == pytest.approx(row.normalized_max * row.std, rel=1e-9)
        assert report.average_normalized_max == pytest.approx(
            np.mean([r.normalized_max for r in report.rows]), rel=1e-12
        )

    def test_empty_evaluation_set(self):
        model = random_model(5)
        n_in, n_out = model.layer_dims[0], model.layer_dims[-1]
        empty = surrogate_dataset(np.empty((0, n_in)), np.empty((0, n_out)))
        with pytest.raises(EmptyEvaluationSet):
            surrogate.max_normalized_residual(model, empty)

    def test_column_mismatch(self):
        model = random_model(6)
        ds = surrogate_dataset(np.zeros((3, 2)), np.zeros((3, 2)), ["a", "b"], ["c", "d"])
        with pytest.raises(ColumnMismatch):
            surrogate.max_normalized_residual(model, ds)


class TestCompositionCenter:
    def test_mean_of_two_rows(self):
        ds = surrogate_dataset([[0.0], [2.0]], [[1.0], [1.0]])
        center, names = surrogate.composition_center(ds)
        assert names == ("x0",)
        np.testing.assert_array_equal(center, [1.0])

    def test_single_row_is_identity(self):
        ds = surrogate_dataset([[3.5, 1.25]], [[0.0]])
        center, _ = surrogate.composition_center(ds)
        np.testing.assert_array_equal(center, [3.5, 1.25])

    def test_matches_column_mean_scan(self, synth_1k):
        center, names = surrogate.composition_center(synth_1k)
        for value, name in zip(center, names):
            col = synth_1k.values[:, synth_1k.column_index(name)]
            assert value == pytest.approx(float(col.sum()) / len(col), rel=1e-12)

    def test_empty_dataset(self):
        ds = Dataset(
            columns=(ColumnSpec("Si", ColumnGroup.ELEMENT_FRACTION),),
            values=np.empty((0, 1)),
            source_row_ids=np.empty(0, dtype=np.int64),
        )
        with pytest.raises(EmptyDataset):
            surrogate.composition_center(ds)
