"""
CNMF Toolkit - API Routes

REST endpoints for running fits and form checks over HTTP.

- Fits run in a worker thread (asyncio.to_thread) launched as a background
  task, so the API never blocks; `wait=true` runs the fit inline instead.
- Input files are read in the request handler, so a bad file fails the
  request (400) instead of the run.
"""

import asyncio
import logging
import uuid
from typing import Optional

import numpy as np
from fastapi import APIRouter, HTTPException
from pydantic import BaseModel, Field, model_validator

from ..diagnostics.forms_check import check_forms
from ..errors import InvalidInputError, MatrixFormatError
from ..files.matrix_file import read_matrix
from ..solvers.config import SolverConfig
from ..solvers.fit import ALGORITHM_REGISTRY, fit
from ..synth.generator import SynthParams, synth_generate

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/api", tags=["cnmf"])

# In-memory storage
runs_store: dict[str, dict] = {}
# Track which runs have a background task running
_running_tasks: dict[str, asyncio.Task] = {}


# --- Request Models ---

class StartRunRequest(BaseModel):
    input_path: Optional[str] = None
    synth: Optional[SynthParams] = None
    K: int = Field(ge=1)
    L: int = Field(ge=1)
    solver: SolverConfig = SolverConfig()
    wait: bool = False

    @model_validator(mode="after")
    def _one_source(self) -> "StartRunRequest":
        if (self.input_path is None) == (self.synth is None):
            raise ValueError("give exactly one of input_path or synth")
        return self


class CheckFormsRequest(BaseModel):
    dims: Optional[tuple[int, int, int, int]] = None  # N, T, K, L
    trials: int = Field(default=100, ge=1)
    seed: int = Field(default=0, ge=0)


# --- Helpers ---

def _load_data(request: StartRunRequest) -> np.ndarray:
    if request.synth is not None:
        return synth_generate(request.synth).X.values
    try:
        return read_matrix(request.input_path, ndim=2)
    except FileNotFoundError:
        raise HTTPException(status_code=400, detail=f"Input file not found: {request.input_path}")
    except MatrixFormatError as e:
        raise HTTPException(status_code=400, detail=str(e))


def _run_view(run_id: str) -> dict:
    run = runs_store[run_id]
    result = run.get("result")
    return {
        "run_id": run_id,
        "status": run["status"],
        "algorithm": run["algorithm"],
        "K": run["K"],
        "L": run["L"],
        "stop_reason": result.stop_reason.value if result else None,
        "final_loss": result.final_loss if result else None,
        "iterations": result.trace.iterations if result else None,
        "elapsed_s": result.trace.elapsed_s if result else None,
        "nnls_warning": result.nnls_warning if result else None,
        "error": run.get("error", ""),
    }


def _execute(run_id: str, X: np.ndarray, request: StartRunRequest) -> None:
    run = runs_store[run_id]
    try:
        run["result"] = fit(X, request.K, request.L, request.solver)
        run["status"] = "completed"
        logger.info("✅ Run %s completed", run_id)
    except Exception as e:
        run["status"] = "error"
        run["error"] = f"{type(e).__name__}: {e}"
        logger.error("❌ Run %s error: %s", run_id, run["error"])


async def _run_fit_background(run_id: str, X: np.ndarray, request: StartRunRequest) -> None:
    try:
        await asyncio.to_thread(_execute, run_id, X, request)
    finally:
        _running_tasks.pop(run_id, None)


# --- Endpoints ---

@router.get("/algorithms")
async def get_algorithms():
    """Registry of available solvers."""
    return {
        "algorithms": {alg.value: desc for alg, desc in ALGORITHM_REGISTRY.items()},
        "total": len(ALGORITHM_REGISTRY),
    }


@router.post("/runs", response_model=dict)
async def start_run(request: StartRunRequest):
    X = _load_data(request)
    if request.L > X.shape[1]:
        raise HTTPException(status_code=422, detail=f"L={request.L} exceeds T={X.shape[1]}")

    run_id = str(uuid.uuid4())[:8]
    runs_store[run_id] = {
        "status": "running",
        "algorithm": request.solver.algorithm.value,
        "K": request.K,
        "L": request.L,
        "result": None,
        "error": "",
    }
    logger.info("🚀 Starting run %s (%s, K=%d, L=%d)", run_id, request.solver.algorithm.value, request.K, request.L)

    if request.wait:
        await asyncio.to_thread(_execute, run_id, X, request)
    else:
        _running_tasks[run_id] = asyncio.create_task(_run_fit_background(run_id, X, request))
    return _run_view(run_id)


@router.get("/runs")
async def list_runs():
    return {
        "runs": [
            {"run_id": rid, "status": r["status"], "algorithm": r["algorithm"]}
            for rid, r in runs_store.items()
        ],
        "total": len(runs_store),
    }


@router.get("/runs/{run_id}", response_model=dict)
async def get_run(run_id: str):
    if run_id not in runs_store:
        raise HTTPException(status_code=404, detail="Run not found")
    return _run_view(run_id)


@router.get("/runs/{run_id}/trace")
async def get_trace(run_id: str):
    """FitTrace records; empty until the run completes."""
    if run_id not in runs_store:
        raise HTTPException(status_code=404, detail="Run not found")
    result = runs_store[run_id].get("result")
    records = result.trace.records if result else []
    return {
        "run_id": run_id,
        "status": runs_store[run_id]["status"],
        "records": [r._asdict() for r in records],
        "total": len(records),
    }


@router.post("/check-forms")
async def post_check_forms(request: CheckFormsRequest):
    try:
        report = await asyncio.to_thread(check_forms, request.dims, request.trials, request.seed)
    except InvalidInputError as e:
        raise HTTPException(status_code=422, detail=str(e))
    return report.to_dict()
