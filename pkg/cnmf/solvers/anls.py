"""
CNMF Toolkit - Alternating Nonnegative Least Squares

W update: exact block minimization of ‖X - W̃H̃‖² row by row of X. The
KL x KL gram H̃H̃ᵀ is built once and shared by all N right-hand sides.

H update: one pass of column block coordinate descent. Column t of H solves
a K-variable NNLS whose design columns are the motifs clipped to the
columns t..t+w-1 that exist (w = min(L, T - t)); the gram for each of the
L possible widths is precomputed and the running residual carries every
other column's contribution. Columns share the residual, so they run in
order.
"""

import logging

import numpy as np

from ..core.forms import reconstruct
from ..core.shifts import shift_columns
from ..core.types import CnmfModel, as_array
from ..nnls import NormalEquations, solve_nnls
from .base import SolverContext

logger = logging.getLogger(__name__)


def stacked_shifts(H: np.ndarray, L: int) -> np.ndarray:
    """H̃ = [H·S_0; H·S_1; …; H·S_{L-1}], shape (L·K, T); row l·K + k is (H·S_l)_k."""
    return np.concatenate([shift_columns(H, lag) for lag in range(L)], axis=0)


def _solve(ne: NormalEquations, x0: np.ndarray, ctx: SolverContext | None) -> np.ndarray:
    """Solve one sub-problem; never return a point worse than the current one."""
    solution = solve_nnls(ne, x0)
    if ctx is not None:
        if solution.method != "bpp":
            ctx.nnls_fallbacks += 1
        if not solution.converged:
            ctx.nnls_failures += 1
            logger.debug("NNLS sub-problem (M=%d) did not converge, kkt=%.3g", ne.size, solution.kkt_residual)
    if not solution.converged and ne.objective(x0) < ne.objective(solution.x):
        return x0
    return solution.x


def anls_update_w(X, model: CnmfModel, ctx: SolverContext | None = None) -> CnmfModel:
    X = as_array(X, 2, "X")
    W, H = model.W, model.H
    L, N, K = W.shape
    H_tilde = stacked_shifts(H, L)
    gram = H_tilde @ H_tilde.T
    gram = 0.5 * (gram + gram.T)
    rhs = H_tilde @ X.T  # column n is the rhs for row n of X
    for n in range(N):
        current = W[:, n, :].reshape(-1)  # ordered l·K + k, matching H̃
        ne = NormalEquations(gram, rhs[:, n])
        W[:, n, :] = _solve(ne, current, ctx).reshape(L, K)
    return model


def clipped_grams(W: np.ndarray) -> np.ndarray:
    """grams[w - 1] = Σ_{l<w} W_lᵀ W_l, the K x K gram of motifs clipped to width w."""
    per_lag = np.einsum("lnk,lnj->lkj", W, W)
    grams = np.cumsum(per_lag, axis=0)
    return 0.5 * (grams + grams.transpose(0, 2, 1))


def anls_update_h(X, model: CnmfModel, ctx: SolverContext | None = None) -> CnmfModel:
    X = as_array(X, 2, "X")
    W, H = model.W, model.H
    L, N, K = W.shape
    T = H.shape[1]
    R = X - reconstruct(W, H)
    grams = clipped_grams(W)
    for t in range(T):
        width = min(L, T - t)
        block = W[:width]  # (width, N, K)
        window = R[:, t : t + width]
        h_old = H[:, t].copy()
        # ⟨clipped motif k, residual + this column's own contribution⟩
        rhs = np.einsum("lnk,nl->k", block, window) + grams[width - 1] @ h_old
        ne = NormalEquations(grams[width - 1], rhs)
        h_new = _solve(ne, h_old, ctx)
        delta = h_old - h_new
        if np.any(delta):
            window += np.einsum("lnk,k->nl", block, delta)
            H[:, t] = h_new
    return model


def anls_step(X, model: CnmfModel, cfg, ctx: SolverContext | None = None) -> CnmfModel:
    X = as_array(X, 2, "X")
    anls_update_w(X, model, ctx)
    anls_update_h(X, model, ctx)
    return model
