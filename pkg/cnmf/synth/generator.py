"""
CNMF Toolkit - Synthetic Data

Ground truth built from K motifs of length L over N features:

  μ_nk ~ U(-1, 1)                     bump centre of fiber (n, k)
  α_n  ~ Dirichlet(α·1_K)             per-feature split across motifs
  W[l, n, k] = α_nk · φ(2(l+1)/L - 1; μ_nk, σ)    φ = Gaussian pdf
  H_kt = 0 with prob zero_prob, else Exponential(rate)
  X = max(0, reconstruct(W, H) + e),  e_nt ~ N(0, noise_std²)

Each random quantity draws from its own child stream of SeedSequence(seed),
so changing noise_std leaves W and H untouched.
"""

import logging
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.stats import norm

from ..core.forms import reconstruct
from ..core.types import ActivationMatrix, DataMatrix, MotifTensor

logger = logging.getLogger(__name__)

# μ, α, H mask, H values, noise
N_STREAMS = 5


class SynthParams(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    N: int = Field(default=250, ge=1)
    T: int = Field(default=10000, ge=1)
    K: int = Field(default=5, ge=1)
    L: int = Field(default=20, ge=1)
    sigma: float = Field(default=0.2, gt=0)
    dirichlet_alpha: float = Field(default=0.1, gt=0)
    zero_prob: float = Field(default=0.1, ge=0, le=1)
    exp_rate: float = Field(default=1.0, gt=0)
    noise_std: float = Field(default=1.0, ge=0)
    seed: int = Field(default=0, ge=0, lt=2**64)

    @model_validator(mode="after")
    def _lag_fits(self) -> "SynthParams":
        if self.L > self.T:
            raise ValueError(f"motif length L={self.L} exceeds T={self.T}")
        return self


@dataclass(eq=False)
class SynthDataset:
    X: DataMatrix
    W_true: MotifTensor
    H_true: ActivationMatrix
    X_clean: DataMatrix
    params: SynthParams


def lag_grid(L: int) -> np.ndarray:
    """2ℓ/L - 1 for ℓ = 1..L (asymmetric: ends at exactly 1)."""
    return 2.0 * np.arange(1, L + 1) / L - 1.0


def dirichlet_rows(rng: np.random.Generator, rows: int, K: int, alpha: float) -> np.ndarray:
    """Symmetric Dirichlet rows as normalized Gamma(alpha, 1) draws."""
    g = rng.gamma(alpha, 1.0, size=(rows, K))
    totals = g.sum(axis=1, keepdims=True)
    # tiny alpha can underflow every draw of a row to 0
    empty = totals[:, 0] == 0.0
    g[empty] = 1.0
    totals[empty] = K
    return g / totals


def synth_generate(p: SynthParams) -> SynthDataset:
    streams = [np.random.Generator(np.random.PCG64(s)) for s in np.random.SeedSequence(p.seed).spawn(N_STREAMS)]
    rng_mu, rng_alpha, rng_mask, rng_h, rng_noise = streams

    mu = rng_mu.uniform(-1.0, 1.0, size=(p.N, p.K))
    alpha = dirichlet_rows(rng_alpha, p.N, p.K, p.dirichlet_alpha)

    grid = lag_grid(p.L)[:, None, None]
    W = alpha[None, :, :] * norm.pdf(grid, loc=mu[None, :, :], scale=p.sigma)

    zero = rng_mask.random((p.K, p.T)) < p.zero_prob
    H = rng_h.exponential(1.0 / p.exp_rate, size=(p.K, p.T))
    H[zero] = 0.0

    X_clean = reconstruct(W, H)
    if p.noise_std == 0.0:
        X = X_clean.copy()
    else:
        X = np.maximum(X_clean + rng_noise.normal(0.0, p.noise_std, size=X_clean.shape), 0.0)

    logger.info(
        "🎲 synth N=%d T=%d K=%d L=%d noise_std=%g seed=%d",
        p.N, p.T, p.K, p.L, p.noise_std, p.seed,
    )
    return SynthDataset(
        X=DataMatrix(X),
        W_true=MotifTensor(W),
        H_true=ActivationMatrix(H),
        X_clean=DataMatrix(X_clean),
        params=p,
    )
