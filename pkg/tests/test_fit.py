"""The fit driver: traces, stop reasons, determinism and recovery."""

import numpy as np
import pytest
from pydantic import ValidationError

from cnmf.core.forms import reconstruct
from cnmf.core.types import CnmfModel
from cnmf.errors import InvalidInputError
from cnmf.solvers import Algorithm, SolverConfig, StopReason, fit, init_random
from cnmf.solvers.base import FitTrace
from cnmf.synth import SynthParams, synth_generate

from conftest import random_factors


class TestInit:

    def test_scaled_to_data_norm(self, small_instance):
        X, _, _ = small_instance
        model = init_random(6, 20, 2, 3, seed=7, X=X)
        assert np.linalg.norm(reconstruct(model.W, model.H)) == pytest.approx(np.linalg.norm(X), rel=1e-12)
        assert model.is_nonnegative()

    def test_seeded(self, small_instance):
        X, _, _ = small_instance
        a, b = init_random(6, 20, 2, 3, 7, X), init_random(6, 20, 2, 3, 7, X)
        np.testing.assert_array_equal(a.W, b.W)
        np.testing.assert_array_equal(a.H, b.H)

    def test_lag_longer_than_data(self):
        with pytest.raises(InvalidInputError):
            init_random(2, 4, 1, 5, 0, np.ones((2, 4)))


class TestFitContract:

    def test_one_iteration_gives_two_records(self, small_instance):
        X, _, _ = small_instance
        result = fit(X, 2, 3, SolverConfig(max_iters=1))
        assert len(result.trace) == 2
        assert [r.iteration for r in result.trace.records] == [0, 1]
        assert result.stop_reason is StopReason.MAX_ITERS

    def test_elapsed_strictly_increasing(self, small_instance):
        X, _, _ = small_instance
        trace = fit(X, 2, 3, SolverConfig(max_iters=20, rel_tol=0.0)).trace
        assert np.all(np.diff([r.elapsed_s for r in trace.records]) > 0)

    @pytest.mark.parametrize("algorithm", list(Algorithm))
    def test_same_seed_same_initial_loss(self, small_instance, algorithm):
        X, _, _ = small_instance
        ref = fit(X, 2, 3, SolverConfig(max_iters=1, seed=11)).trace.records[0].loss
        other = fit(X, 2, 3, SolverConfig(algorithm=algorithm, max_iters=1, seed=11)).trace.records[0].loss
        assert other == ref

    @pytest.mark.parametrize("algorithm", [Algorithm.MU, Algorithm.HALS])
    def test_deterministic(self, small_instance, algorithm):
        X, _, _ = small_instance
        cfg = SolverConfig(algorithm=algorithm, max_iters=15, seed=5)
        a, b = fit(X, 2, 3, cfg), fit(X, 2, 3, cfg)
        np.testing.assert_array_equal(a.trace.losses, b.trace.losses)
        np.testing.assert_array_equal(a.model.W, b.model.W)

    def test_converged_stop(self, small_instance):
        X, _, _ = small_instance
        result = fit(X, 2, 3, SolverConfig(max_iters=5000, rel_tol=1e-3))
        assert result.stop_reason is StopReason.CONVERGED
        losses = result.trace.losses
        assert (losses[-6] - losses[-1]) / losses[-6] < 1e-3
        assert result.trace.iterations >= 5

    def test_time_limit_stop(self, small_instance):
        X, _, _ = small_instance
        result = fit(X, 2, 3, SolverConfig(max_iters=10**6, rel_tol=0.0, time_limit_s=0.05))
        assert result.stop_reason is StopReason.TIME_LIMIT

    def test_explicit_init_is_copied(self, small_instance, rng):
        X, _, _ = small_instance
        init = CnmfModel.from_arrays(*random_factors(rng, 6, 20, 2, 3))
        W0 = init.W.copy()
        fit(X, 2, 3, SolverConfig(max_iters=3), init=init)
        np.testing.assert_array_equal(init.W, W0)

    def test_init_shape_mismatch(self, small_instance, rng):
        X, _, _ = small_instance
        init = CnmfModel.from_arrays(*random_factors(rng, 6, 20, 3, 3))
        with pytest.raises(InvalidInputError):
            fit(X, 2, 3, SolverConfig(), init=init)

    def test_negative_data_rejected(self):
        with pytest.raises(InvalidInputError):
            fit(-np.ones((3, 5)), 1, 2, SolverConfig())

    def test_zero_data_rejected(self):
        with pytest.raises(InvalidInputError):
            fit(np.zeros((3, 5)), 1, 2, SolverConfig())

    def test_sparse_refresh_cadence(self, small_instance):
        X, _, _ = small_instance
        every = fit(X, 2, 3, SolverConfig(max_iters=10, seed=2)).trace.losses
        sparse = fit(X, 2, 3, SolverConfig(max_iters=10, seed=2, full_residual_refresh_every=4)).trace.losses
        np.testing.assert_allclose(sparse, every, rtol=1e-9)

    def test_nnls_warning_clear_on_easy_problem(self, small_instance):
        X, _, _ = small_instance
        assert not fit(X, 2, 3, SolverConfig(algorithm=Algorithm.ANLS, max_iters=3)).nnls_warning


class TestSolverConfig:

    def test_defaults(self):
        cfg = SolverConfig()
        assert cfg.algorithm is Algorithm.HALS
        assert cfg.convergence_window == 5
        assert not cfg.regularized

    @pytest.mark.parametrize("field,value", [("max_iters", 0), ("rel_tol", -1.0), ("l1_h", -0.1), ("time_limit_s", 0.0)])
    def test_invalid_values(self, field, value):
        with pytest.raises(ValidationError):
            SolverConfig(**{field: value})


class TestFitTrace:

    def test_time_to_loss(self):
        trace = FitTrace()
        for i, loss in enumerate([1.0, 0.5, 0.2, 0.1]):
            trace.append(i, 0.1 * (i + 1), loss)
        assert trace.time_to_loss(0.3) == pytest.approx(0.3)
        assert trace.time_to_loss(0.01) is None

    def test_append_forces_increasing_time(self):
        trace = FitTrace()
        trace.append(0, 1.0, 1.0)
        trace.append(1, 1.0, 0.5)
        assert trace.records[1].elapsed_s > trace.records[0].elapsed_s


class TestRecovery:

    def test_noiseless_synthetic_data(self):
        """Best of 5 seeds reaches normalized loss < 0.05 (N=20, T=500, K=3, L=5)."""
        data = synth_generate(SynthParams(N=20, T=500, K=3, L=5, noise_std=0.0, seed=1))
        best = min(
            fit(data.X, 3, 5, SolverConfig(max_iters=500, time_limit_s=60.0, rel_tol=0.0, seed=s)).final_loss
            for s in range(5)
        )
        assert best < 0.05
