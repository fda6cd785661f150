import numpy as np

from .bpp import nnls_bpp
from .enumerate import nnls_oracle_enumerate
from .problem import NnlsSolution, NormalEquations
from .projgrad import nnls_projgrad


def solve_nnls(ne: NormalEquations, x0: np.ndarray | None = None) -> NnlsSolution:
    """Block pivoting first; projected gradient from the best point so far if it does not settle.

    The returned solution's `method` tells which solver produced it.
    """
    solution = nnls_bpp(ne, x0)
    if solution.converged:
        return solution
    start = solution.x
    if x0 is not None and ne.objective(x0) < ne.objective(start):
        start = x0
    fallback = nnls_projgrad(ne, start)
    if fallback.converged or ne.objective(fallback.x) <= ne.objective(solution.x):
        return fallback
    return solution


__all__ = [
    "NnlsSolution",
    "NormalEquations",
    "nnls_bpp",
    "nnls_oracle_enumerate",
    "nnls_projgrad",
    "solve_nnls",
]
