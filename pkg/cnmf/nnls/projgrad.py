"""
CNMF Toolkit - Projected Gradient NNLS

Fallback when block pivoting does not settle. Steps of 1/λ with λ an upper
bound on λ_max(G): a 50-step power-method estimate, inflated by 1% and
capped by the Gershgorin bound. Tracks the best iterate by objective.
"""

import logging

import numpy as np

from .problem import DEFAULT_TOL, NnlsSolution, NormalEquations, finish

logger = logging.getLogger(__name__)

POWER_ITERATIONS = 50


def lipschitz_bound(gram: np.ndarray, iterations: int = POWER_ITERATIONS) -> float:
    gershgorin = float(np.abs(gram).sum(axis=1).max())
    if gershgorin == 0.0:
        return 0.0
    v = np.linspace(1.0, 2.0, gram.shape[0])
    v /= np.linalg.norm(v)
    estimate = 0.0
    for _ in range(iterations):
        w = gram @ v
        norm = np.linalg.norm(w)
        if norm == 0.0:
            break
        estimate = float(v @ w)
        v = w / norm
    return min(max(estimate, 0.0) * 1.01, gershgorin) or gershgorin


def nnls_projgrad(
    ne: NormalEquations,
    x0: np.ndarray | None = None,
    max_iter: int = 5000,
    tol: float = DEFAULT_TOL,
) -> NnlsSolution:
    x = np.zeros(ne.size) if x0 is None else np.maximum(np.asarray(x0, dtype=np.float64).reshape(-1), 0.0)
    target = ne.scaled_tol(tol)
    if ne.kkt_residual(x) <= target:
        return finish(ne, x, 0, converged=True, method="projgrad")

    lam = lipschitz_bound(ne.gram)
    if lam == 0.0:
        # G = 0: the objective is linear, x = 0 is optimal iff rhs <= 0
        solution = finish(ne, x, 0, converged=False, method="projgrad")
        solution.converged = solution.kkt_residual <= target
        return solution

    step = 1.0 / lam
    best_x, best_obj = x, ne.objective(x)
    for iteration in range(1, max_iter + 1):
        x = np.maximum(x - step * ne.gradient(x), 0.0)
        obj = ne.objective(x)
        if obj <= best_obj:
            best_x, best_obj = x, obj
        if ne.kkt_residual(x) <= target:
            return finish(ne, x, iteration, converged=True, method="projgrad")

    logger.debug("projected gradient stopped after %d iterations", max_iter)
    return finish(ne, best_x, max_iter, converged=False, method="projgrad")
