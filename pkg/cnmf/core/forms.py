"""
CNMF Toolkit - Reconstruction Forms

Four equivalent ways to build X̂ from (W, H):

  classical      X̂ = Σ_l W_l · H · S_l                      (reconstruct)
  outer product  X̂ = Σ_k Σ_τ H_kτ [W_::kᵀ]_τ                (conv_motif per k)
  Kronecker      vec(X̂) = V · vec(H),  V = Σ_l S_lᵀ ⊗ W_l   (matrix-free)
  Toeplitz       vec(X̂ᵀ) = [T(w_:nk)]_{n,k} · vec(Hᵀ)       (oracle only)

vec() stacks columns (Fortran order). Columns past T are truncated, which is
what the S_l algebra gives for motifs starting near the right edge.
"""

import numpy as np
from scipy.linalg import toeplitz
from scipy.sparse.linalg import LinearOperator

from .. import config
from ..errors import InvalidInputError, OracleTooLargeError
from .shifts import shift_columns, shift_matrix
from .types import as_array


def _check_pair(W: np.ndarray, H: np.ndarray) -> tuple[int, int, int, int]:
    L, N, K = W.shape
    K_h, T = H.shape
    if K_h != K:
        raise InvalidInputError(f"W has K={K} components but H has {K_h} rows")
    if L > T:
        raise InvalidInputError(f"motif length L={L} exceeds T={T}")
    return N, T, K, L


def conv_motif(motif, h) -> np.ndarray:
    """Convolve one L x N motif with a length-T activation row: Σ_τ h_τ [motifᵀ]_τ."""
    motif = as_array(motif, 2, "motif")
    h = as_array(h, 1, "h")
    L, N = motif.shape
    T = h.shape[0]
    out = np.zeros((N, T))
    for tau in np.flatnonzero(h):
        width = min(L, T - tau)
        out[:, tau : tau + width] += h[tau] * motif[:width].T
    return out


def reconstruct(W, H) -> np.ndarray:
    """Classical form Σ_l W_l · H · S_l."""
    W = as_array(W, 3, "W")
    H = as_array(H, 2, "H")
    N, T, K, L = _check_pair(W, H)
    out = np.zeros((N, T))
    for lag in range(L):
        out += W[lag] @ shift_columns(H, lag)
    return out


def reconstruct_outer(W, H) -> np.ndarray:
    """Outer-product form Σ_k conv_motif(W_::k, h_k)."""
    W = as_array(W, 3, "W")
    H = as_array(H, 2, "H")
    N, T, K, L = _check_pair(W, H)
    out = np.zeros((N, T))
    for k in range(K):
        out += conv_motif(W[:, :, k], H[k])
    return out


# =============================================================================
# KRONECKER FORM (matrix-free)
# =============================================================================

def reconstruct_kron_matvec(W, z) -> np.ndarray:
    """V·z for z of length K·T; with z = vec(H) this is vec(reconstruct(W, H))."""
    W = as_array(W, 3, "W")
    z = as_array(z, 1, "z")
    L, N, K = W.shape
    if z.shape[0] % K:
        raise InvalidInputError(f"length {z.shape[0]} is not a multiple of K={K}")
    T = z.shape[0] // K
    Z = z.reshape((K, T), order="F")
    Y = np.zeros((N, T))
    # (S_lᵀ ⊗ W_l) vec(Z) = vec(W_l Z S_l)
    for lag in range(min(L, T)):
        Y[:, lag:] += W[lag] @ Z[:, : T - lag]
    return Y.ravel(order="F")


def reconstruct_kron_rmatvec(W, y) -> np.ndarray:
    """Vᵀ·y for y of length N·T."""
    W = as_array(W, 3, "W")
    y = as_array(y, 1, "y")
    L, N, K = W.shape
    if y.shape[0] % N:
        raise InvalidInputError(f"length {y.shape[0]} is not a multiple of N={N}")
    T = y.shape[0] // N
    Y = y.reshape((N, T), order="F")
    Z = np.zeros((K, T))
    # (S_l ⊗ W_lᵀ) vec(Y) = vec(W_lᵀ Y S_{-l})
    for lag in range(min(L, T)):
        Z[:, : T - lag] += W[lag].T @ Y[:, lag:]
    return Z.ravel(order="F")


def kron_operator(W, T: int) -> LinearOperator:
    """V as a scipy LinearOperator of shape (N·T, K·T)."""
    W = as_array(W, 3, "W")
    L, N, K = W.shape
    return LinearOperator(
        shape=(N * T, K * T),
        matvec=lambda z: reconstruct_kron_matvec(W, np.ravel(z)),
        rmatvec=lambda y: reconstruct_kron_rmatvec(W, np.ravel(y)),
        dtype=np.float64,
    )


def explicit_kron_operator(W, T: int) -> np.ndarray:
    """Dense V = Σ_l S_lᵀ ⊗ W_l. Oracle for tiny instances only."""
    W = as_array(W, 3, "W")
    L, N, K = W.shape
    _guard_oracle(N, T, K, "explicit Kronecker operator")
    V = np.zeros((N * T, K * T))
    for lag in range(min(L, T)):
        V += np.kron(shift_matrix(T, lag).T, W[lag])
    return V


# =============================================================================
# TOEPLITZ FORM (oracle)
# =============================================================================

def _guard_oracle(N: int, T: int, K: int, what: str) -> None:
    """Both oracles hold a dense (N·T) x (K·T) matrix; cap N·T and that matrix's size."""
    if N * T > config.TOEPLITZ_MAX_ENTRIES:
        raise OracleTooLargeError(
            f"{what} too large: N·T = {N * T} > {config.TOEPLITZ_MAX_ENTRIES} "
            "(raise CNMF_TOEPLITZ_MAX_ENTRIES to allow it)"
        )
    dense = N * T * K * T
    if dense > config.ORACLE_MAX_DENSE_ENTRIES:
        raise OracleTooLargeError(
            f"{what} too large: dense operator has {dense} entries > {config.ORACLE_MAX_DENSE_ENTRIES} "
            "(raise CNMF_ORACLE_MAX_DENSE_ENTRIES to allow it)"
        )


def toeplitz_block(fiber: np.ndarray, T: int) -> np.ndarray:
    """T x T lower-triangular Toeplitz matrix whose l-th subdiagonal is fiber[l]."""
    column = np.zeros(T)
    width = min(len(fiber), T)
    column[:width] = fiber[:width]
    row = np.zeros(T)
    row[0] = column[0]
    return toeplitz(column, row)


def reconstruct_toeplitz(W, H) -> np.ndarray:
    """Toeplitz form: each row x̂_n = Σ_k T(w_:nk) h_k. Rejects instances above the oracle caps."""
    W = as_array(W, 3, "W")
    H = as_array(H, 2, "H")
    N, T, K, L = _check_pair(W, H)
    _guard_oracle(N, T, K, "Toeplitz oracle")
    big = np.empty((N * T, K * T))
    for n in range(N):
        for k in range(K):
            big[n * T : (n + 1) * T, k * T : (k + 1) * T] = toeplitz_block(W[:, n, k], T)
    xt = big @ H.reshape(-1)  # vec(Hᵀ) stacks the rows of H
    return xt.reshape(N, T)
