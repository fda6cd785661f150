"""
CNMF Toolkit - Form Equivalence Check

Draws random nonnegative (W, H), builds X̂ four ways and reports the largest
pairwise deviation, plus the adjoint identity ⟨Vz, y⟩ = ⟨z, Vᵀy⟩ against the
explicit Kronecker operator. L=1 trials also compare with the plain product
W[0] @ H.
"""

import logging
from dataclasses import asdict, dataclass, field
from itertools import combinations

import numpy as np

from ..core.forms import (
    explicit_kron_operator,
    reconstruct,
    reconstruct_kron_matvec,
    reconstruct_kron_rmatvec,
    reconstruct_outer,
    reconstruct_toeplitz,
)
from ..errors import InvalidInputError

logger = logging.getLogger(__name__)

PASS_TOL = 1e-10

# (L, N, K, T) ranges for random dims, inclusive
RANDOM_DIMS = {"L": (1, 5), "N": (2, 6), "K": (1, 3), "T": (6, 15)}


@dataclass
class FormsReport:
    trials: int
    max_pairwise_deviation: float = 0.0
    max_adjoint_deviation: float = 0.0
    max_nmf_deviation: float = 0.0
    nmf_trials: int = 0
    worst_dims: tuple[int, int, int, int] | None = None
    tol: float = PASS_TOL
    deviations: dict[str, float] = field(default_factory=dict)

    @property
    def max_deviation(self) -> float:
        return max(self.max_pairwise_deviation, self.max_adjoint_deviation, self.max_nmf_deviation)

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tol

    def to_dict(self) -> dict:
        out = asdict(self)
        out["max_deviation"] = self.max_deviation
        out["passed"] = self.passed
        return out


def _draw_dims(rng: np.random.Generator) -> tuple[int, int, int, int]:
    L, N, K, T = (int(rng.integers(lo, hi + 1)) for lo, hi in RANDOM_DIMS.values())
    return N, T, K, L


def check_forms(dims: tuple[int, int, int, int] | None = None, trials: int = 100, seed: int = 0) -> FormsReport:
    """dims is (N, T, K, L); None draws fresh dims per trial."""
    if trials < 1:
        raise InvalidInputError(f"trials must be >= 1, got {trials}")
    if dims is not None:
        N, T, K, L = dims
        if min(dims) < 1 or L > T:
            raise InvalidInputError(f"invalid dims N={N} T={T} K={K} L={L}")

    rng = np.random.default_rng(seed)
    report = FormsReport(trials=trials)
    for _ in range(trials):
        N, T, K, L = dims if dims is not None else _draw_dims(rng)
        W = rng.random((L, N, K))
        H = rng.random((K, T))

        forms = {
            "classical": reconstruct(W, H),
            "outer": reconstruct_outer(W, H),
            "kronecker": reconstruct_kron_matvec(W, H.ravel(order="F")).reshape((N, T), order="F"),
            "toeplitz": reconstruct_toeplitz(W, H),
        }
        for a, b in combinations(forms, 2):
            dev = float(np.max(np.abs(forms[a] - forms[b])))
            key = f"{a}~{b}"
            report.deviations[key] = max(report.deviations.get(key, 0.0), dev)
            if dev > report.max_pairwise_deviation:
                report.max_pairwise_deviation = dev
                report.worst_dims = (N, T, K, L)

        z = rng.standard_normal(K * T)
        y = rng.standard_normal(N * T)
        V = explicit_kron_operator(W, T)
        adj = abs(float(reconstruct_kron_matvec(W, z) @ y - z @ reconstruct_kron_rmatvec(W, y)))
        explicit = float(np.max(np.abs(V @ z - reconstruct_kron_matvec(W, z))))
        report.max_adjoint_deviation = max(report.max_adjoint_deviation, adj, explicit)

        if L == 1:
            report.nmf_trials += 1
            nmf = float(np.max(np.abs(forms["classical"] - W[0] @ H)))
            report.max_nmf_deviation = max(report.max_nmf_deviation, nmf)

    log = logger.info if report.passed else logger.warning
    log(
        "%s form check: %d trials, max deviation %.3e",
        "✅" if report.passed else "❌",
        trials,
        report.max_deviation,
    )
    return report
