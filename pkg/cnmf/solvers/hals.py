"""
CNMF Toolkit - Hierarchical Alternating Least Squares

W sweep: each column p = (l, k) of W̃ = [W_0 … W_{L-1}] gets the closed-form
NMF-HALS update against the row h̃_p = (H·S_l)_k of H̃, with the residual
patched after every column.

H sweep: pure coordinate descent over single entries, k outer and t inner
ascending. Near the right edge the motif is clipped to the columns that
exist. The sweep runs as a compiled kernel sharing the residual patch.

Regularization: l1 is subtracted from the numerator, l2 added to the
denominator. Variables whose (clipped) norm is zero are left unchanged.
"""

import numba
import numpy as np

from ..core.residual import patch_columns, residual_full
from ..core.types import CnmfModel, Residual, as_array
from .base import SolverContext
from .config import SolverConfig


def hals_update_w(X, model: CnmfModel, R: Residual, l1: float = 0.0, l2: float = 0.0) -> CnmfModel:
    W, H = model.W, model.H
    L, N, K = W.shape
    T = H.shape[1]
    E = R.values
    for lag in range(L):
        for k in range(K):
            h = H[k, : T - lag]  # nonzero part of h̃_p
            norm2 = float(h @ h)
            if norm2 == 0.0:
                continue
            w_old = W[lag, :, k].copy()
            num = E[:, lag:] @ h + w_old * norm2 - l1
            w_new = np.maximum(num / (norm2 + l2), 0.0)
            E[:, lag:] -= np.outer(w_new - w_old, h)
            W[lag, :, k] = w_new
    return model


@numba.jit(nopython=True, cache=True)
def _hals_h_sweep(W, H, R, l1, l2):
    L, N, K = W.shape
    T = H.shape[1]
    clipped_norms = np.zeros(L + 1)
    for k in range(K):
        motif = W[:, :, k]
        # clipped_norms[w] = ‖motif[:w]‖²
        for lag in range(L):
            s = 0.0
            for n in range(N):
                s += motif[lag, n] * motif[lag, n]
            clipped_norms[lag + 1] = clipped_norms[lag] + s
        for t in range(T):
            width = min(L, T - t)
            norm2 = clipped_norms[width]
            if norm2 == 0.0:
                continue
            ip = 0.0
            for n in range(N):
                for lag in range(width):
                    ip += motif[lag, n] * R[n, t + lag]
            old = H[k, t]
            new = (ip + old * norm2 - l1) / (norm2 + l2)
            if new < 0.0:
                new = 0.0
            if new != old:
                patch_columns(R, motif, t, old - new)
                H[k, t] = new


def hals_update_h(X, model: CnmfModel, R: Residual, l1: float = 0.0, l2: float = 0.0) -> CnmfModel:
    _hals_h_sweep(model.W, model.H, R.values, float(l1), float(l2))
    return model


def hals_step(X, model: CnmfModel, cfg: SolverConfig, ctx: SolverContext) -> CnmfModel:
    X = as_array(X, 2, "X")
    if ctx.residual is None:
        ctx.residual = residual_full(X, model.W, model.H)
    hals_update_w(X, model, ctx.residual, cfg.l1_w, cfg.l2_w)
    hals_update_h(X, model, ctx.residual, cfg.l1_h, cfg.l2_h)
    return model
