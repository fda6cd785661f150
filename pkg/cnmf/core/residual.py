"""
CNMF Toolkit - Residual Maintenance

R = X - X̂ is kept current by the coordinate solvers. A single-entry change
H_kt: old -> new touches only columns t..t+L-1 of R, so the patch costs
O(N·L). Fits refresh R with residual_full on a fixed cadence to bound
floating-point drift.
"""

import numba
import numpy as np

from ..errors import InvalidInputError
from .forms import reconstruct
from .types import Residual, as_array


@numba.jit(nopython=True, cache=True)
def patch_columns(R, motif, t, delta):
    """R[:, t:t+w] += delta * motif[:w].T with w clipped at the right edge."""
    L, N = motif.shape
    T = R.shape[1]
    width = min(L, T - t)
    for n in range(N):
        for lag in range(width):
            R[n, t + lag] += delta * motif[lag, n]


def residual_full(X, W, H) -> Residual:
    """Full recompute of X - reconstruct(W, H)."""
    X = as_array(X, 2, "X")
    return Residual(X - reconstruct(W, H))


def residual_patch(R: Residual, motif, t: int, old: float, new: float) -> Residual:
    """Apply H_kt: old -> new to R in place. t is 0-based."""
    motif = np.ascontiguousarray(as_array(motif, 2, "motif"))
    T = R.values.shape[1]
    if not 0 <= t < T:
        raise InvalidInputError(f"timebin t={t} outside [0, {T})")
    if old != new:
        patch_columns(R.values, motif, int(t), float(old) - float(new))
    return R
