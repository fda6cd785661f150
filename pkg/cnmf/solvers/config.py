"""
CNMF Toolkit - Solver Configuration
"""

import math
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field


class Algorithm(str, Enum):
    MU = "mu"
    HALS = "hals"
    ANLS = "anls"


class SolverConfig(BaseModel):
    """Everything a fit needs besides the data and (K, L).

    Regularization weights apply to the HALS path only: l1 is subtracted from
    the update numerator, l2 added to its denominator.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    algorithm: Algorithm = Algorithm.HALS
    max_iters: int = Field(default=100, ge=1)
    time_limit_s: float = Field(default=math.inf, gt=0)
    rel_tol: float = Field(default=1e-6, ge=0)
    convergence_window: int = Field(default=5, ge=1)
    l1_w: float = Field(default=0.0, ge=0)
    l1_h: float = Field(default=0.0, ge=0)
    l2_w: float = Field(default=0.0, ge=0)
    l2_h: float = Field(default=0.0, ge=0)
    seed: int = Field(default=0, ge=0, lt=2**64)
    eps: float = Field(default=1e-12, gt=0)
    full_residual_refresh_every: int = Field(default=1, ge=1)

    @property
    def regularized(self) -> bool:
        return any((self.l1_w, self.l1_h, self.l2_w, self.l2_h))
