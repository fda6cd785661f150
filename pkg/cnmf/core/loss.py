"""
CNMF Toolkit - Loss

Normalized loss ‖X - X̂‖ / ‖X‖ (root-sum-of-squares norms) and per-component
loadings.
"""

import numpy as np

from ..errors import InvalidInputError
from .forms import conv_motif, reconstruct
from .types import as_array


def data_norm(X) -> float:
    norm = float(np.linalg.norm(as_array(X, 2, "X")))
    if norm == 0.0:
        raise InvalidInputError("normalized loss undefined: ‖X‖ = 0")
    return norm


def normalized_loss(X, W, H) -> float:
    X = as_array(X, 2, "X")
    norm_x = data_norm(X)
    return float(np.linalg.norm(X - reconstruct(W, H)) / norm_x)


def component_loadings(X, W, H) -> np.ndarray:
    """Fraction of ‖X‖² explained by each component on its own, clipped at 0.

    Component k explains ‖X‖² - ‖X - X̂_k‖² = 2⟨X, X̂_k⟩ - ‖X̂_k‖².
    """
    X = as_array(X, 2, "X")
    W = as_array(W, 3, "W")
    H = as_array(H, 2, "H")
    total = data_norm(X) ** 2
    loadings = np.empty(W.shape[2])
    for k in range(W.shape[2]):
        Xk = conv_motif(W[:, :, k], H[k])
        loadings[k] = (2.0 * np.vdot(X, Xk) - np.vdot(Xk, Xk)) / total
    return np.maximum(loadings, 0.0)
