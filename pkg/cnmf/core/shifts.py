"""
CNMF Toolkit - Shift Operators

A·S_l moves the columns of A right by l with zero fill; A·S_{-l} = A·S_lᵀ
moves them left. Both are index arithmetic; S_l itself is only built by
`shift_matrix`, for oracles at small T.
"""

import numpy as np

from ..errors import InvalidInputError
from .types import as_array


def _check_lag(lag: int) -> int:
    if lag < 0:
        raise InvalidInputError(f"shift lag must be >= 0, got {lag}")
    return int(lag)


def shift_columns(A, lag: int) -> np.ndarray:
    """Return A·S_lag: columns shifted right, left-filled with zeros."""
    A = as_array(A, 2, "A")
    lag = _check_lag(lag)
    T = A.shape[1]
    out = np.zeros_like(A)
    if lag < T:
        out[:, lag:] = A[:, : T - lag]
    return out


def shift_columns_left(A, lag: int) -> np.ndarray:
    """Return A·S_{-lag}: columns shifted left, right-filled with zeros."""
    A = as_array(A, 2, "A")
    lag = _check_lag(lag)
    T = A.shape[1]
    out = np.zeros_like(A)
    if lag < T:
        out[:, : T - lag] = A[:, lag:]
    return out


def shift_matrix(T: int, lag: int) -> np.ndarray:
    """Explicit T x T matrix S_lag with ones on the lag-th upper diagonal."""
    return np.eye(T, k=_check_lag(lag))
