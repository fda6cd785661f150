"""
CNMF Toolkit - Objective, Gradients and KKT Residuals

f(W, H) = ‖X - X̂‖². At a stationary point of the constrained problem every
entry satisfies min(x, ∇f) = 0.
"""

import numpy as np

from ..core.forms import reconstruct, reconstruct_kron_rmatvec
from ..core.types import as_array
from .anls import stacked_shifts


def objective(X, W, H) -> float:
    X = as_array(X, 2, "X")
    return float(np.sum((X - reconstruct(W, H)) ** 2))


def grad_h(X, W, H) -> np.ndarray:
    """∇_H f = -2 · unvec(Vᵀ vec(X - X̂)), through the matrix-free adjoint."""
    X = as_array(X, 2, "X")
    H = as_array(H, 2, "H")
    residual = X - reconstruct(W, H)
    g = -2.0 * reconstruct_kron_rmatvec(W, residual.ravel(order="F"))
    return g.reshape(H.shape, order="F")


def grad_w(X, W, H) -> np.ndarray:
    """∇_W f = -2 (X - X̂) H̃ᵀ, returned in the (L, N, K) layout of W."""
    X = as_array(X, 2, "X")
    W = as_array(W, 3, "W")
    H = as_array(H, 2, "H")
    L, N, K = W.shape
    residual = X - reconstruct(W, H)
    G = -2.0 * residual @ stacked_shifts(H, L).T  # (N, L·K)
    return G.reshape(N, L, K).transpose(1, 0, 2)


def kkt_residuals(X, W, H) -> tuple[float, float]:
    """(max |min(W, ∇_W f)|, max |min(H, ∇_H f)|)."""
    W = as_array(W, 3, "W")
    H = as_array(H, 2, "H")
    kkt_w = float(np.max(np.abs(np.minimum(W, grad_w(X, W, H)))))
    kkt_h = float(np.max(np.abs(np.minimum(H, grad_h(X, W, H)))))
    return kkt_w, kkt_h
