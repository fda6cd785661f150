"""
CNMF Toolkit - Block Principal Pivoting NNLS

Passive set F holds the free variables; the rest sit at zero. Each pivot
solves G_FF x_F = rhs_F and then exchanges every infeasible variable
(x_i < 0 in F, or gradient y_i < 0 outside F) between the sets. If the
infeasible count fails to drop for MAX_STALLS consecutive pivots, only the
largest infeasible index is exchanged, which guarantees termination.
"""

import logging

import numpy as np

from .problem import DEFAULT_TOL, NnlsSolution, NormalEquations, finish

logger = logging.getLogger(__name__)

MAX_STALLS = 3


def solve_passive(ne: NormalEquations, passive: np.ndarray) -> np.ndarray:
    """x with x_F = G_FF⁻¹ rhs_F and zeros elsewhere; ridge jitter on singular G_FF."""
    x = np.zeros(ne.size)
    if not passive.any():
        return x
    idx = np.flatnonzero(passive)
    G = ne.gram[np.ix_(idx, idx)]
    b = ne.rhs[idx]
    try:
        sol = np.linalg.solve(G, b)
        if not np.all(np.isfinite(sol)):
            raise np.linalg.LinAlgError("non-finite passive solution")
    except np.linalg.LinAlgError:
        sol = np.linalg.solve(G + ne.ridge() * np.eye(len(idx)), b)
    x[idx] = sol
    return x


def nnls_bpp(
    ne: NormalEquations,
    x0: np.ndarray | None = None,
    max_iter: int | None = None,
    tol: float = DEFAULT_TOL,
) -> NnlsSolution:
    M = ne.size
    if max_iter is None:
        max_iter = 5 * M + 10

    passive = np.zeros(M, dtype=bool) if x0 is None else np.asarray(x0).reshape(-1) > 0
    # entries this small are treated as exact zeros when testing feasibility
    clean = 1e-12 * max(1.0, float(np.abs(ne.rhs).max()), float(np.abs(ne.gram).max()))

    best_infeasible = M + 1
    stalls_left = MAX_STALLS
    x = np.zeros(M)

    for iteration in range(max_iter + 1):
        x = solve_passive(ne, passive)
        y = ne.gradient(x)
        y[passive] = 0.0
        x[np.abs(x) < clean] = 0.0
        y[np.abs(y) < clean] = 0.0

        infeasible = (passive & (x < 0)) | (~passive & (y < 0))
        n_infeasible = int(infeasible.sum())
        if n_infeasible == 0:
            solution = finish(ne, x, iteration, converged=True)
            solution.converged = solution.kkt_residual <= ne.scaled_tol(tol)
            return solution
        if iteration == max_iter:
            break

        if n_infeasible < best_infeasible:
            best_infeasible = n_infeasible
            stalls_left = MAX_STALLS
            passive ^= infeasible
        elif stalls_left >= 1:
            stalls_left -= 1
            passive ^= infeasible
        else:
            flip = np.flatnonzero(infeasible).max()
            passive[flip] = not passive[flip]

    logger.debug("BPP hit %d pivots without a feasible partition (M=%d)", max_iter, M)
    return finish(ne, x, max_iter, converged=False)
