"""
CNMF Toolkit - NNLS Problem Types

NNLS in normal-equation form: minimize ½ xᵀGx - rhsᵀx subject to x >= 0,
with G = AᵀA and rhs = Aᵀb. Callers build G once and reuse it across many
right-hand sides.
"""

from dataclasses import dataclass

import numpy as np

from ..errors import InvalidInputError

DEFAULT_TOL = 1e-8


@dataclass(eq=False)
class NormalEquations:
    gram: np.ndarray
    rhs: np.ndarray

    def __post_init__(self):
        self.gram = np.asarray(self.gram, dtype=np.float64)
        self.rhs = np.asarray(self.rhs, dtype=np.float64).reshape(-1)
        M = self.rhs.shape[0]
        if M < 1:
            raise InvalidInputError("NNLS needs at least one variable")
        if self.gram.shape != (M, M):
            raise InvalidInputError(f"gram shape {self.gram.shape} does not match rhs length {M}")
        if not (np.all(np.isfinite(self.gram)) and np.all(np.isfinite(self.rhs))):
            raise InvalidInputError("gram and rhs must be finite")
        scale = max(1.0, float(np.abs(self.gram).max()))
        if not np.allclose(self.gram, self.gram.T, rtol=0.0, atol=1e-12 * scale):
            raise InvalidInputError("gram must be symmetric")

    @property
    def size(self) -> int:
        return self.rhs.shape[0]

    def gradient(self, x: np.ndarray) -> np.ndarray:
        return self.gram @ x - self.rhs

    def objective(self, x: np.ndarray) -> float:
        return float(0.5 * x @ (self.gram @ x) - self.rhs @ x)

    def kkt_residual(self, x: np.ndarray) -> float:
        """max_i |min(x_i, (Gx - rhs)_i)|; zero exactly at a KKT point."""
        return float(np.max(np.abs(np.minimum(x, self.gradient(x)))))

    def scaled_tol(self, tol: float) -> float:
        """KKT tolerance measured in units of the right-hand side (unit-scale problems use tol as is)."""
        return tol * max(1.0, float(np.abs(self.rhs).max()))

    def ridge(self) -> float:
        """Jitter added to singular passive-set systems."""
        return 1e-12 * max(float(np.trace(self.gram)) / self.size, 1.0)


@dataclass(eq=False)
class NnlsSolution:
    x: np.ndarray
    kkt_residual: float
    iterations: int
    converged: bool
    method: str = "bpp"


def finish(
    ne: NormalEquations, x: np.ndarray, iterations: int, converged: bool, method: str = "bpp"
) -> NnlsSolution:
    """Clamp to the orthant exactly and attach the KKT certificate."""
    x = np.maximum(x, 0.0)
    return NnlsSolution(
        x=x,
        kkt_residual=ne.kkt_residual(x),
        iterations=iterations,
        converged=converged,
        method=method,
    )
