"""
CNMF Toolkit - Multiplicative Updates

One outer iteration: every W_l from a single X̂, then H from the X̂ rebuilt
after the W sweep. W_l pairs with H·S_l, the same lag the classical
reconstruction uses for it.
"""

import numpy as np

from ..core.forms import reconstruct
from ..core.shifts import shift_columns, shift_columns_left
from ..core.types import CnmfModel, as_array
from .base import SolverContext
from .config import SolverConfig


def mu_update_w(X: np.ndarray, model: CnmfModel, eps: float) -> CnmfModel:
    W, H = model.W, model.H
    X_hat = reconstruct(W, H)
    for lag in range(W.shape[0]):
        H_lag = shift_columns(H, lag)
        W[lag] *= (X @ H_lag.T) / (X_hat @ H_lag.T + eps)
    return model


def mu_update_h(X: np.ndarray, model: CnmfModel, eps: float) -> CnmfModel:
    W, H = model.W, model.H
    X_hat = reconstruct(W, H)
    num = np.zeros_like(H)
    den = np.zeros_like(H)
    for lag in range(W.shape[0]):
        num += W[lag].T @ shift_columns_left(X, lag)
        den += W[lag].T @ shift_columns_left(X_hat, lag)
    H *= num / (den + eps)
    return model


def mu_step(X, model: CnmfModel, cfg: SolverConfig, ctx: SolverContext | None = None) -> CnmfModel:
    X = as_array(X, 2, "X")
    mu_update_w(X, model, cfg.eps)
    mu_update_h(X, model, cfg.eps)
    return model
