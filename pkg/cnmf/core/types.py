"""
CNMF Toolkit - Core Types

Dense nonnegative value types. Shapes:

    X  DataMatrix        (N, T)     features x timebins
    W  MotifTensor       (L, N, K)  lag-major, so W[l] is the N x K slice W_l
    H  ActivationMatrix  (K, T)
    R  Residual          (N, T)     X - reconstruct(W, H), may be negative

Every wrapper coerces to contiguous float64 and checks its invariants once,
on construction. Core operations accept the wrappers or plain arrays.
"""

from dataclasses import dataclass, field

import numpy as np

from ..errors import InvalidInputError


def as_array(obj, ndim: int | None = None, name: str = "array") -> np.ndarray:
    """Return the float64 ndarray behind a wrapper type or array-like."""
    values = getattr(obj, "values", obj)
    arr = np.asarray(values, dtype=np.float64)
    if ndim is not None and arr.ndim != ndim:
        raise InvalidInputError(f"{name} must be {ndim}-D, got shape {arr.shape}")
    return arr


def _checked(values, ndim: int, name: str, nonneg: bool = True) -> np.ndarray:
    arr = np.ascontiguousarray(as_array(values, ndim, name))
    if arr.size == 0 or min(arr.shape) < 1:
        raise InvalidInputError(f"{name} has a zero-size dimension: {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name} contains non-finite entries")
    if nonneg and np.any(arr < 0):
        raise InvalidInputError(f"{name} must be nonnegative")
    return arr


@dataclass(eq=False)
class DataMatrix:
    """Nonnegative N x T observation matrix X."""

    values: np.ndarray

    def __post_init__(self):
        self.values = _checked(self.values, 2, "DataMatrix")

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.values))


@dataclass(eq=False)
class MotifTensor:
    """Nonnegative L x N x K motif tensor W; W[:, :, k] is motif k."""

    values: np.ndarray

    def __post_init__(self):
        self.values = _checked(self.values, 3, "MotifTensor")

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.values.shape

    def motif(self, k: int) -> np.ndarray:
        """The L x N slice W_::k."""
        return self.values[:, :, k]


@dataclass(eq=False)
class ActivationMatrix:
    """Nonnegative K x T activation matrix H."""

    values: np.ndarray

    def __post_init__(self):
        self.values = _checked(self.values, 2, "ActivationMatrix")

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape


@dataclass(eq=False)
class Residual:
    """X - reconstruct(W, H). Updated in place by the coordinate solvers."""

    values: np.ndarray

    def __post_init__(self):
        self.values = _checked(self.values, 2, "Residual", nonneg=False).copy()

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.values))


@dataclass(eq=False)
class CnmfModel:
    """A motif tensor paired with its activations."""

    motifs: MotifTensor
    activations: ActivationMatrix
    dims: tuple[int, int, int, int] = field(init=False)

    def __post_init__(self):
        L, N, K = self.motifs.shape
        K_h, T = self.activations.shape
        if K_h != K:
            raise InvalidInputError(f"W has K={K} components but H has {K_h} rows")
        if L > T:
            raise InvalidInputError(f"motif length L={L} exceeds T={T}")
        self.dims = (N, T, K, L)

    @classmethod
    def from_arrays(cls, W, H) -> "CnmfModel":
        return cls(MotifTensor(W), ActivationMatrix(H))

    @property
    def W(self) -> np.ndarray:
        return self.motifs.values

    @property
    def H(self) -> np.ndarray:
        return self.activations.values

    def copy(self) -> "CnmfModel":
        return CnmfModel.from_arrays(self.W.copy(), self.H.copy())

    def check_against(self, X) -> None:
        """Raise unless the model's (N, T) match the data's."""
        N, T = as_array(X, 2, "X").shape
        if (N, T) != self.dims[:2]:
            raise InvalidInputError(
                f"model dims (N={self.dims[0]}, T={self.dims[1]}) do not match X shape {(N, T)}"
            )

    def is_nonnegative(self) -> bool:
        return bool(np.all(self.W >= 0) and np.all(self.H >= 0))

