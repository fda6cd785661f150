"""
CNMF Toolkit - Fit Records

FitTrace holds one (iteration, elapsed_s, loss) record per outer iteration,
starting with iteration 0 for the initial model.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Optional

import numpy as np

from ..core.types import CnmfModel, Residual
from .config import Algorithm


class StopReason(str, Enum):
    MAX_ITERS = "max_iters"
    TIME_LIMIT = "time_limit"
    CONVERGED = "converged"


class TraceRecord(NamedTuple):
    iteration: int
    elapsed_s: float
    loss: float


@dataclass
class FitTrace:
    records: list[TraceRecord] = field(default_factory=list)

    def append(self, iteration: int, elapsed_s: float, loss: float) -> None:
        if self.records and elapsed_s <= self.records[-1].elapsed_s:
            elapsed_s = float(np.nextafter(self.records[-1].elapsed_s, np.inf))
        self.records.append(TraceRecord(int(iteration), float(elapsed_s), float(loss)))

    def __len__(self) -> int:
        return len(self.records)

    @property
    def losses(self) -> np.ndarray:
        return np.array([r.loss for r in self.records])

    @property
    def final_loss(self) -> float:
        return self.records[-1].loss

    @property
    def iterations(self) -> int:
        return self.records[-1].iteration if self.records else 0

    @property
    def elapsed_s(self) -> float:
        return self.records[-1].elapsed_s if self.records else 0.0

    def time_to_loss(self, target: float) -> Optional[float]:
        """Elapsed time of the first record with loss <= target, or None."""
        for record in self.records:
            if record.loss <= target:
                return record.elapsed_s
        return None


@dataclass
class SolverContext:
    """Per-fit mutable state shared across outer iterations."""

    residual: Optional[Residual] = None
    nnls_fallbacks: int = 0
    nnls_failures: int = 0


@dataclass(eq=False)
class FitResult:
    model: CnmfModel
    trace: FitTrace
    stop_reason: StopReason
    algorithm: Algorithm
    nnls_warning: bool = False

    @property
    def final_loss(self) -> float:
        return self.trace.final_loss
