"""
CNMF Toolkit - Exhaustive NNLS Oracle

Tries all 2^M passive sets, keeps the feasible KKT points and returns the
one with the least objective. Test oracle for small M only.
"""

import itertools

import numpy as np

from .. import config
from ..errors import InvalidInputError
from .problem import NnlsSolution, NormalEquations, finish


def nnls_oracle_enumerate(ne: NormalEquations) -> NnlsSolution:
    M = ne.size
    if M > config.ENUMERATE_MAX_VARS:
        raise InvalidInputError(f"enumeration oracle supports M <= {config.ENUMERATE_MAX_VARS}, got {M}")

    slack = 1e-10 * max(1.0, float(np.abs(ne.rhs).max()), float(np.abs(ne.gram).max()))
    best_x, best_obj = None, np.inf
    fallback_x, fallback_obj = np.zeros(M), ne.objective(np.zeros(M))
    candidates = 0

    for pattern in itertools.product((False, True), repeat=M):
        passive = np.array(pattern, dtype=bool)
        x = np.zeros(M)
        if passive.any():
            idx = np.flatnonzero(passive)
            x[idx] = np.linalg.lstsq(ne.gram[np.ix_(idx, idx)], ne.rhs[idx], rcond=None)[0]
        candidates += 1
        if np.any(x < -slack):
            continue
        x = np.maximum(x, 0.0)
        obj = ne.objective(x)
        if obj < fallback_obj:
            fallback_x, fallback_obj = x, obj
        grad = ne.gradient(x)
        if np.any(grad[~passive] < -slack) or np.any(np.abs(grad[passive]) > slack * 10):
            continue
        if obj < best_obj:
            best_x, best_obj = x, obj

    if best_x is None:
        best_x = fallback_x
    return finish(ne, best_x, candidates, converged=True, method="enumerate")
