"""
CNMF Toolkit - Bench Graph State

State that flows through the bench pipeline. `runs` is written by parallel
fit_run branches, so it carries an append reducer.
"""

from typing import Annotated, Optional, TypedDict

import numpy as np


# --- Reducer functions for parallel writes ---

def merge_append(existing: list, new: list) -> list:
    return existing + new


# --- Records ---

class RunRecord(TypedDict):
    algorithm: str
    seed: int
    status: str  # ok | error
    final_loss: Optional[float]
    iters: Optional[int]
    elapsed_s: Optional[float]
    stop_reason: str
    trace_path: str
    trace: list[tuple[int, float, float]]
    error: str


class FitRunInput(TypedDict):
    """Payload of one Send to fit_run."""

    X: np.ndarray
    algorithm: str
    seed: int
    K: int
    L: int
    solver: dict
    out_dir: str
    timing: bool


class BenchState(TypedDict):
    input_path: Optional[str]
    synth: Optional[dict]
    algorithms: list[str]
    seeds: list[int]
    K: int
    L: int
    solver: dict  # SolverConfig fields other than algorithm and seed
    out_dir: str
    timing: bool

    X: Optional[np.ndarray]
    runs: Annotated[list[RunRecord], merge_append]
    summary: list[RunRecord]
    summary_path: str


def create_bench_state(
    *,
    algorithms: list[str],
    seeds: list[int],
    K: int,
    L: int,
    out_dir: str,
    input_path: Optional[str] = None,
    synth: Optional[dict] = None,
    solver: Optional[dict] = None,
    timing: bool = True,
) -> BenchState:
    return BenchState(
        input_path=input_path,
        synth=synth,
        algorithms=list(algorithms),
        seeds=list(seeds),
        K=K,
        L=L,
        solver=dict(solver or {}),
        out_dir=str(out_dir),
        timing=timing,
        X=None,
        runs=[],
        summary=[],
        summary_path="",
    )
