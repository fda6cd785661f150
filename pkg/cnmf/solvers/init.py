"""
CNMF Toolkit - Random Initialization

Uniform [0, 1) factors from NumPy's PCG64 generator, then both scaled by
c = (‖X‖ / ‖X̂‖)^½ so the initial reconstruction has the data's norm.
"""

import numpy as np

from ..core.forms import reconstruct
from ..core.loss import data_norm
from ..core.types import CnmfModel, as_array
from ..errors import InvalidInputError


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def init_random(N: int, T: int, K: int, L: int, seed: int, X) -> CnmfModel:
    if min(N, T, K, L) < 1:
        raise InvalidInputError(f"dims must be >= 1, got N={N} T={T} K={K} L={L}")
    if L > T:
        raise InvalidInputError(f"motif length L={L} exceeds T={T}")
    X = as_array(X, 2, "X")
    if X.shape != (N, T):
        raise InvalidInputError(f"X shape {X.shape} does not match (N={N}, T={T})")

    rng = make_rng(seed)
    W = rng.random((L, N, K))
    H = rng.random((K, T))

    norm_hat = float(np.linalg.norm(reconstruct(W, H)))
    if norm_hat > 0.0:
        c = np.sqrt(data_norm(X) / norm_hat)
        W *= c
        H *= c
    return CnmfModel.from_arrays(W, H)
