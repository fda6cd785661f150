"""
CNMF Toolkit - Bench Graph Nodes

prepare_data loads or synthesizes X once; fit_run runs one (algorithm, seed)
fit per branch; summarize orders the runs and writes summary.csv.

Every seed shares one initialization across algorithms: fit seeds
init_random with the run's seed, independent of the algorithm.
"""

import csv
import logging
from pathlib import Path

from ..files.atomic import atomic_open
from ..files.matrix_file import read_matrix, write_matrix
from ..files.trace_file import write_trace
from ..solvers.base import FitTrace, TraceRecord
from ..solvers.config import Algorithm, SolverConfig
from ..solvers.fit import fit
from ..synth.generator import SynthParams, synth_generate
from .state import BenchState, FitRunInput, RunRecord

logger = logging.getLogger(__name__)

SUMMARY_HEADER = (
    "algorithm",
    "seed",
    "status",
    "final_loss",
    "iters",
    "elapsed_s",
    "stop_reason",
    "time_to_mu_final_s",
    "error",
)


def trace_filename(algorithm: str, seed: int) -> str:
    return f"trace_{algorithm}_seed{seed}.csv"


def prepare_data_node(state: BenchState) -> dict:
    out_dir = Path(state["out_dir"])
    out_dir.mkdir(parents=True, exist_ok=True)

    if state.get("input_path"):
        X = read_matrix(state["input_path"], ndim=2)
        logger.info("📂 bench input %s, shape %s", state["input_path"], X.shape)
    else:
        data = synth_generate(SynthParams(**(state.get("synth") or {})))
        X = data.X.values
        write_matrix(out_dir / "X.cnmf", X)
        write_matrix(out_dir / "W_true.cnmf", data.W_true.values)
        write_matrix(out_dir / "H_true.cnmf", data.H_true.values)

    logger.info(
        "🚀 bench: %d algorithms x %d seeds, K=%d L=%d",
        len(state["algorithms"]), len(state["seeds"]), state["K"], state["L"],
    )
    return {"X": X}


def fit_run_node(payload: FitRunInput) -> dict:
    algorithm, seed = payload["algorithm"], payload["seed"]
    trace_path = Path(payload["out_dir"]) / trace_filename(algorithm, seed)
    try:
        cfg = SolverConfig(**payload["solver"], algorithm=Algorithm(algorithm), seed=seed)
        result = fit(payload["X"], payload["K"], payload["L"], cfg)
        write_trace(trace_path, result.trace, timing=payload["timing"])
    except Exception as e:
        logger.error("❌ %s seed %d failed: %s: %s", algorithm, seed, type(e).__name__, e)
        record = RunRecord(
            algorithm=algorithm,
            seed=seed,
            status="error",
            final_loss=None,
            iters=None,
            elapsed_s=None,
            stop_reason="",
            trace_path="",
            trace=[],
            error=f"{type(e).__name__}: {e}",
        )
        return {"runs": [record]}

    record = RunRecord(
        algorithm=algorithm,
        seed=seed,
        status="ok",
        final_loss=result.final_loss,
        iters=result.trace.iterations,
        elapsed_s=result.trace.elapsed_s,
        stop_reason=result.stop_reason.value,
        trace_path=str(trace_path),
        trace=[tuple(r) for r in result.trace.records],
        error="",
    )
    logger.info("  ✓ %s seed %d: loss=%.6g (%s)", algorithm, seed, result.final_loss, record["stop_reason"])
    return {"runs": [record]}


def time_to_mu_final(record: RunRecord, mu: RunRecord | None) -> float | None:
    """Elapsed time at which `record` first reached the MU final loss of its seed."""
    if mu is None or mu["status"] != "ok" or record["status"] != "ok":
        return None
    trace = FitTrace(records=[TraceRecord(*r) for r in record["trace"]])
    return trace.time_to_loss(mu["final_loss"])


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


def summarize_node(state: BenchState) -> dict:
    order = {alg: i for i, alg in enumerate(state["algorithms"])}
    runs = sorted(state["runs"], key=lambda r: (order.get(r["algorithm"], len(order)), r["seed"]))
    mu_by_seed = {r["seed"]: r for r in runs if r["algorithm"] == Algorithm.MU.value}

    summary_path = Path(state["out_dir"]) / "summary.csv"
    with atomic_open(summary_path, "w") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SUMMARY_HEADER)
        for r in runs:
            writer.writerow(
                _cell(v)
                for v in (
                    r["algorithm"],
                    r["seed"],
                    r["status"],
                    r["final_loss"],
                    r["iters"],
                    r["elapsed_s"],
                    r["stop_reason"],
                    time_to_mu_final(r, mu_by_seed.get(r["seed"])),
                    r["error"],
                )
            )

    ok = sum(r["status"] == "ok" for r in runs)
    logger.info("✅ bench finished: %d/%d runs ok, summary at %s", ok, len(runs), summary_path)
    return {"summary": runs, "summary_path": str(summary_path)}
