"""Residual recompute, O(N·L) patching and the normalized loss."""

import numpy as np
import pytest

from cnmf.core.forms import reconstruct
from cnmf.core.loss import component_loadings, normalized_loss
from cnmf.core.preprocess import log_shift
from cnmf.core.residual import residual_full, residual_patch
from cnmf.core.types import CnmfModel, DataMatrix, Residual
from cnmf.errors import InvalidInputError

from conftest import random_factors


class TestResidualFull:

    def test_exact_model(self, rng):
        W, H = random_factors(rng, 4, 10, 2, 3)
        R = residual_full(reconstruct(W, H), W, H)
        np.testing.assert_allclose(R.values, 0.0, atol=1e-12)

    def test_zero_motifs(self, rng):
        W, H = random_factors(rng, 4, 10, 2, 3)
        X = rng.random((4, 10))
        np.testing.assert_array_equal(residual_full(X, np.zeros_like(W), H).values, X)

    def test_matches_difference(self, rng):
        W, H = random_factors(rng, 4, 10, 2, 3)
        X = rng.random((4, 10))
        np.testing.assert_allclose(residual_full(X, W, H).values, X - reconstruct(W, H), atol=1e-12)


class TestResidualPatch:

    def test_no_change(self, rng):
        W, H = random_factors(rng, 3, 8, 2, 3)
        R = residual_full(rng.random((3, 8)), W, H)
        before = R.values.copy()
        residual_patch(R, W[:, :, 0], 4, H[0, 4], H[0, 4])
        np.testing.assert_array_equal(R.values, before)

    def test_matches_full_recompute(self, rng):
        W, H = random_factors(rng, 3, 8, 2, 3)
        X = rng.random((3, 8))
        R = residual_full(X, W, H)
        old = H[1, 2]
        H[1, 2] = 0.75
        residual_patch(R, W[:, :, 1], 2, old, 0.75)
        np.testing.assert_allclose(R.values, residual_full(X, W, H).values, atol=1e-12)

    def test_right_edge_touches_last_column_only(self, rng):
        W, H = random_factors(rng, 3, 8, 1, 3)
        R = residual_full(rng.random((3, 8)), W, H)
        before = R.values.copy()
        residual_patch(R, W[:, :, 0], 7, 0.0, 1.0)
        np.testing.assert_array_equal(R.values[:, :7], before[:, :7])
        np.testing.assert_allclose(R.values[:, 7], before[:, 7] - W[0, :, 0], atol=1e-15)

    def test_out_of_range_timebin(self, rng):
        W, H = random_factors(rng, 3, 8, 1, 3)
        R = residual_full(rng.random((3, 8)), W, H)
        with pytest.raises(InvalidInputError):
            residual_patch(R, W[:, :, 0], 8, 0.0, 1.0)

    def test_long_edit_sequence(self, rng):
        """Many single-entry edits stay within 1e-9 relative of a full recompute."""
        W, H = random_factors(rng, 5, 30, 3, 4)
        X = rng.random((5, 30))
        R = residual_full(X, W, H)
        for _ in range(2000):
            k, t = int(rng.integers(3)), int(rng.integers(30))
            new = float(rng.random())
            residual_patch(R, W[:, :, k], t, H[k, t], new)
            H[k, t] = new
        full = residual_full(X, W, H).values
        assert np.linalg.norm(R.values - full) <= 1e-9 * max(1.0, np.linalg.norm(full))

    def test_residual_may_be_negative(self):
        R = Residual(np.array([[-1.0, 2.0]]))
        assert R.norm == pytest.approx(np.sqrt(5))


class TestNormalizedLoss:

    def test_exact_model(self, rng):
        W, H = random_factors(rng, 4, 10, 2, 3)
        assert normalized_loss(reconstruct(W, H), W, H) == pytest.approx(0.0, abs=1e-12)

    def test_zero_motifs(self, rng):
        W, H = random_factors(rng, 4, 10, 2, 3)
        assert normalized_loss(rng.random((4, 10)), np.zeros_like(W), H) == pytest.approx(1.0)

    def test_hand_values(self):
        X = np.array([[3.0, 4.0]])
        H = np.array([[1.0, 0.0]])
        assert normalized_loss(X, np.zeros((1, 1, 1)), H) == pytest.approx(1.0)
        assert normalized_loss(X, np.full((1, 1, 1), 3.0), H) == pytest.approx(4 / 5)

    def test_zero_data_rejected(self):
        with pytest.raises(InvalidInputError):
            normalized_loss(np.zeros((2, 3)), np.ones((1, 2, 1)), np.ones((1, 3)))


class TestLoadings:

    def test_single_exact_component(self, rng):
        W, H = random_factors(rng, 4, 10, 1, 2)
        np.testing.assert_allclose(component_loadings(reconstruct(W, H), W, H), [1.0], atol=1e-12)

    def test_bounds(self, rng):
        W, H = random_factors(rng, 4, 10, 3, 2)
        loadings = component_loadings(rng.random((4, 10)), W, H)
        assert loadings.shape == (3,)
        assert np.all(loadings >= 0)


class TestTypes:

    def test_negative_data_rejected(self):
        with pytest.raises(InvalidInputError):
            DataMatrix(np.array([[1.0, -1.0]]))

    def test_non_finite_rejected(self):
        with pytest.raises(InvalidInputError):
            DataMatrix(np.array([[1.0, np.nan]]))

    def test_model_dims(self, rng):
        W, H = random_factors(rng, 4, 10, 2, 3)
        model = CnmfModel.from_arrays(W, H)
        assert model.dims == (4, 10, 2, 3)
        model.check_against(np.zeros((4, 10)))
        with pytest.raises(InvalidInputError):
            model.check_against(np.zeros((4, 11)))

    def test_copy_is_independent(self, rng):
        model = CnmfModel.from_arrays(*random_factors(rng, 2, 5, 1, 2))
        clone = model.copy()
        clone.H[0, 0] = 99.0
        assert model.H[0, 0] != 99.0


class TestLogShift:

    def test_nonnegative_and_monotone(self, rng):
        X = rng.random((3, 10)) * 100
        Y = log_shift(X)
        assert np.all(Y >= 0)
        order = np.argsort(X, axis=None)
        assert np.all(np.diff(Y.ravel()[order]) >= 0)

    def test_explicit_offset(self):
        Y = log_shift(np.array([[1.0, np.e - 1e-10]]), offset=1.0)
        np.testing.assert_allclose(Y, [[1.0, 2.0]], atol=1e-9)
