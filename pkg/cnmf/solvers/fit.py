"""
CNMF Toolkit - Fit Driver

init_random, then repeat one outer step of the chosen algorithm (W sweep,
then H sweep) and record (iteration, elapsed, loss) until one of:

  max_iters reached                                   -> MAX_ITERS
  solver time (loss evaluation excluded) > limit       -> TIME_LIMIT
  (loss[i-w] - loss[i]) / loss[i-w] < rel_tol, i >= w  -> CONVERGED

elapsed_s in the trace is wall-clock from fit start and does include loss
evaluation. HALS rebuilds its residual every `full_residual_refresh_every`
iterations; on those iterations the loss comes straight from it.
"""

import logging
import time
from typing import Callable

import numpy as np

from ..core.loss import data_norm, normalized_loss
from ..core.residual import residual_full
from ..core.types import CnmfModel, as_array
from ..errors import InvalidInputError, SolverError
from .anls import anls_step
from .base import FitResult, FitTrace, SolverContext, StopReason
from .config import Algorithm, SolverConfig
from .hals import hals_step
from .init import init_random
from .mu import mu_step

logger = logging.getLogger(__name__)

StepFunction = Callable[[np.ndarray, CnmfModel, SolverConfig, SolverContext], CnmfModel]

STEP_FUNCTIONS: dict[Algorithm, StepFunction] = {
    Algorithm.MU: mu_step,
    Algorithm.HALS: hals_step,
    Algorithm.ANLS: anls_step,
}

ALGORITHM_REGISTRY = {
    Algorithm.MU: "Multiplicative updates: one scaled gradient step per factor sweep.",
    Algorithm.HALS: "Hierarchical ALS: closed-form column updates for W, single-entry coordinate descent for H.",
    Algorithm.ANLS: "Alternating NNLS: exact row-wise block solve for W, one column pass of block coordinate descent for H.",
}


def _converged(trace: FitTrace, window: int, rel_tol: float) -> bool:
    if len(trace) <= window:
        return False
    before = trace.records[-1 - window].loss
    now = trace.records[-1].loss
    if before == 0.0:
        return True
    return (before - now) / before < rel_tol


def fit(X, K: int, L: int, cfg: SolverConfig, init: CnmfModel | None = None) -> FitResult:
    X = np.ascontiguousarray(as_array(X, 2, "X"))
    N, T = X.shape
    if np.any(X < 0):
        raise InvalidInputError("X must be nonnegative")
    norm_x = data_norm(X)

    start = time.perf_counter()
    if init is None:
        model = init_random(N, T, K, L, cfg.seed, X)
    else:
        init.check_against(X)
        if init.dims[2:] != (K, L):
            raise InvalidInputError(f"initial model has (K, L)={init.dims[2:]}, expected {(K, L)}")
        model = init.copy()

    step = STEP_FUNCTIONS[cfg.algorithm]
    ctx = SolverContext()
    trace = FitTrace()
    loss_time = 0.0

    tick = time.perf_counter()
    trace.append(0, tick - start, normalized_loss(X, model.W, model.H))
    loss_time += time.perf_counter() - tick

    stop_reason = StopReason.MAX_ITERS
    for iteration in range(1, cfg.max_iters + 1):
        step(X, model, cfg, ctx)
        tick = time.perf_counter()
        solver_time = tick - start - loss_time

        if not model.is_nonnegative():
            raise SolverError(f"{cfg.algorithm.value} produced negative factors at iteration {iteration}")

        if cfg.algorithm is Algorithm.HALS and iteration % cfg.full_residual_refresh_every == 0:
            ctx.residual = residual_full(X, model.W, model.H)
            loss = ctx.residual.norm / norm_x
        else:
            loss = normalized_loss(X, model.W, model.H)
        now = time.perf_counter()
        loss_time += now - tick
        trace.append(iteration, now - start, loss)
        logger.debug("iter %d  loss=%.10g  elapsed=%.3fs", iteration, loss, now - start)

        if _converged(trace, cfg.convergence_window, cfg.rel_tol):
            stop_reason = StopReason.CONVERGED
            break
        if solver_time > cfg.time_limit_s:
            stop_reason = StopReason.TIME_LIMIT
            break

    if ctx.nnls_failures:
        logger.warning(
            "⚠️  %d NNLS sub-problems did not converge (%d fell back to projected gradient)",
            ctx.nnls_failures,
            ctx.nnls_fallbacks,
        )
    logger.info(
        "✅ %s fit: loss=%.6g after %d iterations (%s, %.2fs)",
        cfg.algorithm.value,
        trace.final_loss,
        trace.iterations,
        stop_reason.value,
        trace.elapsed_s,
    )
    return FitResult(
        model=model,
        trace=trace,
        stop_reason=stop_reason,
        algorithm=cfg.algorithm,
        nnls_warning=ctx.nnls_failures > 0,
    )
