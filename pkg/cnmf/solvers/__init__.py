from .anls import anls_step, anls_update_h, anls_update_w
from .base import FitResult, FitTrace, SolverContext, StopReason, TraceRecord
from .config import Algorithm, SolverConfig
from .fit import ALGORITHM_REGISTRY, STEP_FUNCTIONS, fit
from .hals import hals_step, hals_update_h, hals_update_w
from .init import init_random
from .mu import mu_step

__all__ = [
    "ALGORITHM_REGISTRY",
    "Algorithm",
    "FitResult",
    "FitTrace",
    "STEP_FUNCTIONS",
    "SolverConfig",
    "SolverContext",
    "StopReason",
    "TraceRecord",
    "anls_step",
    "anls_update_h",
    "anls_update_w",
    "fit",
    "hals_step",
    "hals_update_h",
    "hals_update_w",
    "init_random",
    "mu_step",
]
