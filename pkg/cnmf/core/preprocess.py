"""
CNMF Toolkit - Preprocessing

Log-compression for magnitude spectrograms, shifted so the result is
nonnegative. Spectrogram computation itself happens upstream.
"""

import numpy as np

from ..errors import InvalidInputError
from .types import as_array


def log_shift(X, floor: float = 1e-10, offset: float | None = None) -> np.ndarray:
    """log(X + floor) + offset; offset defaults to the smallest value that makes every entry >= 0."""
    X = as_array(X, 2, "X")
    if np.any(X < 0):
        raise InvalidInputError("log_shift expects a nonnegative magnitude matrix")
    if floor <= 0:
        raise InvalidInputError("floor must be positive")
    logged = np.log(X + floor)
    if offset is None:
        offset = max(0.0, -float(logged.min()))
    return np.maximum(logged + offset, 0.0)
