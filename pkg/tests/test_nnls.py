"""NNLS solvers on normal equations: block pivoting, projected gradient, enumeration."""

import numpy as np
import pytest

from cnmf import config
from cnmf.errors import InvalidInputError
from cnmf.nnls import (
    NormalEquations,
    nnls_bpp,
    nnls_oracle_enumerate,
    nnls_projgrad,
    solve_nnls,
)
from cnmf.nnls.projgrad import lipschitz_bound

CASES = [
    (np.eye(2), [3.0, -1.0], [3.0, 0.0]),
    (np.array([[1.0, 1.0], [1.0, 2.0]]), [2.0, 1.0], [2.0, 0.0]),
    (np.array([[2.0, 0.5], [0.5, 1.0]]), [-1.0, -0.5], [0.0, 0.0]),
]


def random_problem(rng, M):
    A = rng.standard_normal((M + 3, M))
    b = rng.standard_normal(M + 3)
    return NormalEquations(A.T @ A, A.T @ b)


class TestNormalEquations:

    def test_asymmetric_gram_rejected(self):
        with pytest.raises(InvalidInputError):
            NormalEquations(np.array([[1.0, 2.0], [0.0, 1.0]]), [1.0, 1.0])

    def test_shape_mismatch_rejected(self):
        with pytest.raises(InvalidInputError):
            NormalEquations(np.eye(3), [1.0, 1.0])

    def test_kkt_residual_zero_at_solution(self):
        ne = NormalEquations(np.eye(2), [3.0, -1.0])
        assert ne.kkt_residual(np.array([3.0, 0.0])) == 0.0


class TestBlockPivoting:

    @pytest.mark.parametrize("gram,rhs,expected", CASES)
    def test_known_solutions(self, gram, rhs, expected):
        sol = nnls_bpp(NormalEquations(gram, rhs))
        assert sol.converged
        np.testing.assert_allclose(sol.x, expected, atol=1e-12)
        assert sol.kkt_residual <= 1e-8

    def test_gradient_at_solution(self):
        ne = NormalEquations(np.array([[1.0, 1.0], [1.0, 2.0]]), [2.0, 1.0])
        sol = nnls_bpp(ne)
        np.testing.assert_allclose(ne.gradient(sol.x), [0.0, 1.0], atol=1e-12)

    def test_nonpositive_rhs_gives_zero(self, rng):
        gram = random_problem(rng, 4).gram
        sol = nnls_bpp(NormalEquations(gram, -rng.random(4)))
        np.testing.assert_array_equal(sol.x, np.zeros(4))

    def test_singular_gram(self):
        """Duplicate columns make G singular; the ridge retry still returns a KKT point."""
        A = np.array([[1.0, 1.0], [2.0, 2.0]])
        ne = NormalEquations(A.T @ A, A.T @ np.array([1.0, 2.0]))
        sol = nnls_bpp(ne)
        oracle = nnls_oracle_enumerate(ne)
        assert np.all(sol.x >= 0)
        assert ne.objective(sol.x) == pytest.approx(ne.objective(oracle.x), abs=1e-9)

    def test_warm_start_at_optimum(self):
        ne = NormalEquations(np.array([[1.0, 1.0], [1.0, 2.0]]), [2.0, 1.0])
        sol = nnls_bpp(ne, x0=np.array([2.0, 0.0]))
        assert sol.converged
        assert sol.iterations == 0

    def test_solution_exactly_nonnegative(self, rng):
        for M in range(1, 7):
            sol = nnls_bpp(random_problem(rng, M))
            assert np.all(sol.x >= 0)


class TestAgainstEnumeration:

    def test_thousand_random_instances(self, rng):
        for trial in range(1000):
            M = int(rng.integers(1, 7))
            ne = random_problem(rng, M)
            sol = nnls_bpp(ne)
            oracle = nnls_oracle_enumerate(ne)
            assert ne.objective(sol.x) == pytest.approx(ne.objective(oracle.x), abs=1e-9)
            if sol.converged:
                assert sol.kkt_residual <= 1e-8

    def test_large_scale_rhs_uses_relative_tolerance(self, rng):
        """With |rhs| around 1e6 convergence is judged relative to the right-hand side."""
        for _ in range(200):
            M = int(rng.integers(1, 7))
            A = rng.standard_normal((M + 3, M))
            b = 1e6 * rng.standard_normal(M + 3)
            ne = NormalEquations(A.T @ A, A.T @ b)
            sol = nnls_bpp(ne)
            oracle = nnls_oracle_enumerate(ne)
            assert ne.objective(sol.x) == pytest.approx(ne.objective(oracle.x), rel=1e-9, abs=1e-6)
            if sol.converged:
                assert sol.kkt_residual <= ne.scaled_tol(1e-8)

    def test_warm_start_never_worse(self, rng):
        for _ in range(200):
            M = int(rng.integers(1, 7))
            ne = random_problem(rng, M)
            cold = nnls_bpp(ne)
            warm = nnls_bpp(ne, x0=rng.random(M) * (rng.random(M) > 0.5))
            assert warm.converged and cold.converged
            assert ne.objective(warm.x) <= ne.objective(cold.x) + 1e-9


class TestProjectedGradient:

    @pytest.mark.parametrize("gram,rhs,expected", CASES)
    def test_known_solutions(self, gram, rhs, expected):
        sol = nnls_projgrad(NormalEquations(gram, rhs))
        assert sol.method == "projgrad"
        np.testing.assert_allclose(sol.x, expected, atol=1e-6)

    def test_scalar_one_step(self):
        sol = nnls_projgrad(NormalEquations(np.eye(1), [5.0]))
        np.testing.assert_allclose(sol.x, [5.0])
        assert sol.iterations == 1

    def test_optimal_start_returns_immediately(self):
        sol = nnls_projgrad(NormalEquations(np.eye(2), [3.0, -1.0]), x0=np.array([3.0, 0.0]))
        assert sol.converged
        assert sol.iterations == 0

    def test_budget_exhaustion_flags(self):
        ne = NormalEquations(np.array([[1.0, 1.0], [1.0, 2.0]]), [2.0, 1.0])
        sol = nnls_projgrad(ne, max_iter=1, tol=0.0)
        assert not sol.converged
        assert np.all(sol.x >= 0)

    def test_lipschitz_bound_covers_spectrum(self, rng):
        gram = random_problem(rng, 5).gram
        assert lipschitz_bound(gram) >= np.linalg.eigvalsh(gram).max() * (1 - 1e-9)


class TestEnumeration:

    def test_scalar_negative(self):
        np.testing.assert_array_equal(nnls_oracle_enumerate(NormalEquations([[2.0]], [-4.0])).x, [0.0])

    def test_scalar_positive(self):
        np.testing.assert_allclose(nnls_oracle_enumerate(NormalEquations([[2.0]], [4.0])).x, [2.0])

    def test_rejects_large_problems(self, monkeypatch):
        monkeypatch.setattr(config, "ENUMERATE_MAX_VARS", 3)
        with pytest.raises(InvalidInputError):
            nnls_oracle_enumerate(NormalEquations(np.eye(4), np.ones(4)))

    def test_default_cap(self):
        with pytest.raises(InvalidInputError):
            nnls_oracle_enumerate(NormalEquations(np.eye(13), np.ones(13)))


class TestSolveNnls:

    def test_uses_bpp_when_it_converges(self):
        sol = solve_nnls(NormalEquations(np.eye(2), [3.0, -1.0]))
        assert sol.method == "bpp"
        np.testing.assert_allclose(sol.x, [3.0, 0.0])
