from .state import BenchState, RunRecord, create_bench_state
from .workflow import compile_workflow, create_workflow, run_bench

__all__ = ["BenchState", "RunRecord", "compile_workflow", "create_bench_state", "create_workflow", "run_bench"]
