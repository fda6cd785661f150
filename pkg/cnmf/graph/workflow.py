"""
CNMF Toolkit - Bench Workflow

    START
      │
      ▼
    [prepare_data]
      │ fan-out: one Send per (algorithm, seed)
      ├──────────┬──────────┐
      ▼          ▼          ▼
    [fit_run]  [fit_run]  [fit_run]   ← PARALLEL, bounded by max_concurrency
      └──────────┴──────────┘
                 ▼
            [summarize]
                 │
                 ▼
                END
"""

from langgraph.graph import END, START, StateGraph
from langgraph.types import Send

from .nodes import fit_run_node, prepare_data_node, summarize_node
from .state import BenchState, FitRunInput


def dispatch_runs(state: BenchState) -> list[Send]:
    """Fan-out: one fit_run per (algorithm, seed), all on the same X."""
    return [
        Send(
            "fit_run",
            FitRunInput(
                X=state["X"],
                algorithm=algorithm,
                seed=seed,
                K=state["K"],
                L=state["L"],
                solver=state["solver"],
                out_dir=state["out_dir"],
                timing=state["timing"],
            ),
        )
        for algorithm in state["algorithms"]
        for seed in state["seeds"]
    ]


def create_workflow() -> StateGraph:
    workflow = StateGraph(BenchState)

    workflow.add_node("prepare_data", prepare_data_node)
    workflow.add_node("fit_run", fit_run_node)
    workflow.add_node("summarize", summarize_node)

    workflow.add_edge(START, "prepare_data")
    workflow.add_conditional_edges("prepare_data", dispatch_runs, ["fit_run"])
    # summarize waits for every fit_run branch
    workflow.add_edge("fit_run", "summarize")
    workflow.add_edge("summarize", END)

    return workflow


def compile_workflow():
    """Bench runs are one-shot, so no checkpointer."""
    return create_workflow().compile()


def run_bench(state: BenchState, workers: int = 1) -> BenchState:
    app = compile_workflow()
    return app.invoke(state, config={"max_concurrency": max(1, int(workers))})
