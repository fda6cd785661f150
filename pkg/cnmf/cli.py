"""
CNMF Toolkit - Command Line

    cnmf fit          fit W, H to a matrix file
    cnmf synth        generate a synthetic dataset
    cnmf bench        compare solvers from a shared initialization per seed
    cnmf check-forms  cross-check the four reconstruction forms
    cnmf serve        run the HTTP API

Standard output carries one JSON result line; logs go to standard error.

Exit codes: 0 ok, 1 form check breached / no bench run succeeded,
2 missing or malformed input file, 3 invalid flags or parameters.
"""

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np
from pydantic import ValidationError

from . import __version__, config
from .core.loss import component_loadings, data_norm, normalized_loss
from .core.preprocess import log_shift
from .core.types import DataMatrix
from .diagnostics.forms_check import check_forms
from .errors import CnmfError, InvalidInputError, MatrixFormatError
from .files.matrix_file import read_matrix, write_matrix
from .files.trace_file import write_trace
from .graph.state import create_bench_state
from .graph.workflow import run_bench
from .solvers.config import Algorithm, SolverConfig
from .solvers.fit import fit
from .synth.generator import SynthParams, synth_generate

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_USAGE = 3

RESULT_KEYS = ("algorithm", "final_loss", "stop_reason", "iterations", "elapsed_s", "nnls_warning", "loadings")

# bench runs are budgeted by wall-clock; the iteration cap only backstops it
BENCH_MAX_ITERS = 1_000_000
BENCH_TIME_LIMIT_S = 120.0


class CliExit(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


class CliParser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit code 3."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# --- argument types ---

def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def int_list(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def algorithm_list(text: str) -> list[str]:
    names = [v.strip().lower() for v in text.split(",") if v.strip()]
    valid = {a.value for a in Algorithm}
    bad = [n for n in names if n not in valid]
    if bad or not names:
        raise argparse.ArgumentTypeError(f"algorithms must be drawn from {sorted(valid)}, got {text!r}")
    return list(dict.fromkeys(names))


def dims_arg(text: str) -> tuple[int, int, int, int]:
    values = int_list(text)
    if len(values) != 4 or min(values) < 1:
        raise argparse.ArgumentTypeError(f"--dims takes four positive integers N,T,K,L, got {text!r}")
    return tuple(values)


# --- helpers ---

def _emit(payload: dict) -> None:
    print(json.dumps(payload), flush=True)


def _load_data(path: str, log_transform: bool = False) -> np.ndarray:
    """Read and validate X; every problem with the file itself maps to exit 2."""
    try:
        X = read_matrix(path, ndim=2)
        if log_transform:
            X = log_shift(X)
        X = DataMatrix(X).values
        data_norm(X)
    except FileNotFoundError:
        raise CliExit(EXIT_BAD_INPUT, f"input file not found: {path}")
    except (MatrixFormatError, InvalidInputError, OSError) as e:
        raise CliExit(EXIT_BAD_INPUT, f"bad input file {path}: {e}")
    return X


def _solver_fields(args) -> dict:
    fields = {
        "max_iters": args.max_iters,
        "time_limit_s": args.time_limit_s,
        "rel_tol": args.rel_tol,
        "l1_w": args.l1_w,
        "l1_h": args.l1_h,
        "l2_w": args.l2_w,
        "l2_h": args.l2_h,
        "full_residual_refresh_every": args.refresh_every,
    }
    return {k: v for k, v in fields.items() if v is not None}


def _add_solver_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-iters", type=int)
    p.add_argument("--time-limit-s", type=float)
    p.add_argument("--rel-tol", type=float)
    p.add_argument("--l1-w", type=float)
    p.add_argument("--l1-h", type=float)
    p.add_argument("--l2-w", type=float)
    p.add_argument("--l2-h", type=float)
    p.add_argument("--refresh-every", type=int, help="HALS: full residual recompute period")


def _add_synth_args(p: argparse.ArgumentParser) -> None:
    defaults = SynthParams()
    p.add_argument("--N", type=int, default=defaults.N)
    p.add_argument("--T", type=int, default=defaults.T)
    p.add_argument("--sigma", type=float, default=defaults.sigma)
    p.add_argument("--dirichlet-alpha", type=float, default=defaults.dirichlet_alpha)
    p.add_argument("--zero-prob", type=float, default=defaults.zero_prob)
    p.add_argument("--exp-rate", type=float, default=defaults.exp_rate)
    p.add_argument("--noise-std", type=float, default=defaults.noise_std)


def _synth_params(args, K: int, L: int, seed: int) -> SynthParams:
    return SynthParams(
        N=args.N,
        T=args.T,
        K=K,
        L=L,
        sigma=args.sigma,
        dirichlet_alpha=args.dirichlet_alpha,
        zero_prob=args.zero_prob,
        exp_rate=args.exp_rate,
        noise_std=args.noise_std,
        seed=seed,
    )


# --- subcommands ---

def cmd_fit(args) -> int:
    cfg = SolverConfig(algorithm=Algorithm(args.algorithm), seed=args.seed, **_solver_fields(args))
    if cfg.regularized and cfg.algorithm is not Algorithm.HALS:
        raise CliExit(EXIT_USAGE, "--l1-*/--l2-* regularization is only supported with --algorithm hals")

    X = _load_data(args.input, args.log_transform)
    result = fit(X, args.K, args.L, cfg)

    if args.out_w:
        write_matrix(args.out_w, result.model.W)
    if args.out_h:
        write_matrix(args.out_h, result.model.H)
    if args.trace:
        write_trace(args.trace, result.trace, timing=not args.no_timing)

    loadings = component_loadings(X, result.model.W, result.model.H)
    values = (
        result.algorithm.value,
        result.final_loss,
        result.stop_reason.value,
        result.trace.iterations,
        result.trace.elapsed_s,
        result.nnls_warning,
        [float(v) for v in loadings],
    )
    _emit(dict(zip(RESULT_KEYS, values)))
    return EXIT_OK


def cmd_synth(args) -> int:
    params = _synth_params(args, args.K, args.L, args.seed)
    data = synth_generate(params)
    write_matrix(args.out_x, data.X.values)
    write_matrix(args.out_w, data.W_true.values)
    write_matrix(args.out_h, data.H_true.values)

    payload = {"N": params.N, "T": params.T, "K": params.K, "L": params.L, "seed": params.seed, "out_x": args.out_x}
    if args.verify:
        X = read_matrix(args.out_x, ndim=2)
        W = read_matrix(args.out_w, ndim=3)
        H = read_matrix(args.out_h, ndim=2)
        nonneg = bool(np.all(X >= 0))
        payload["verified_nonnegative"] = nonneg
        payload["normalized_loss_true"] = normalized_loss(X, W, H)
        if not nonneg:
            _emit(payload)
            return EXIT_FAILED
    _emit(payload)
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.input is None and not args.synth:
        raise CliExit(EXIT_USAGE, "bench needs --input PATH or --synth")
    if args.input is not None and args.synth:
        raise CliExit(EXIT_USAGE, "--input and --synth are mutually exclusive")

    synth_defaults = SynthParams()
    K = args.K if args.K is not None else synth_defaults.K
    L = args.L if args.L is not None else synth_defaults.L
    if args.input is not None:
        if args.K is None or args.L is None:
            raise CliExit(EXIT_USAGE, "--K and --L are required with --input")
        _load_data(args.input)
        synth = None
    else:
        synth = _synth_params(args, K, L, args.synth_seed).model_dump()

    solver = _solver_fields(args)
    solver.setdefault("max_iters", BENCH_MAX_ITERS)
    solver.setdefault("time_limit_s", BENCH_TIME_LIMIT_S)
    # validate once up front so a bad flag fails fast instead of in every run
    SolverConfig(**solver)

    state = create_bench_state(
        algorithms=args.algorithms,
        seeds=args.seeds,
        K=K,
        L=L,
        out_dir=args.out_dir,
        input_path=args.input,
        synth=synth,
        solver=solver,
        timing=not args.no_timing,
    )
    final = run_bench(state, workers=args.workers)

    runs = final["summary"]
    ok = sum(r["status"] == "ok" for r in runs)
    _emit({"summary": final["summary_path"], "runs": len(runs), "succeeded": ok})
    return EXIT_OK if ok else EXIT_FAILED


def cmd_check_forms(args) -> int:
    report = check_forms(dims=args.dims, trials=args.trials, seed=args.seed)
    _emit(report.to_dict())
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("cnmf.main:app", host=args.host, port=args.port, log_level=args.log_level.lower())
    return EXIT_OK


# --- parser ---

def build_parser() -> CliParser:
    parser = CliParser(prog="cnmf", description="Convolutive NMF toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=config.LOG_LEVEL)
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=CliParser)

    p = sub.add_parser("fit", help="fit a CNMF model to a matrix file")
    p.add_argument("--input", required=True)
    p.add_argument("--K", type=positive_int, required=True)
    p.add_argument("--L", type=positive_int, required=True)
    p.add_argument("--algorithm", choices=[a.value for a in Algorithm], default=config.DEFAULT_ALGORITHM)
    p.add_argument("--seed", type=int, default=0)
    _add_solver_args(p)
    p.add_argument("--out-w")
    p.add_argument("--out-h")
    p.add_argument("--trace")
    p.add_argument("--no-timing", action="store_true", help="write iteration index instead of wall-clock")
    p.add_argument("--log-transform", action="store_true", help="fit log(X) shifted to be nonnegative")
    p.set_defaults(handler=cmd_fit)

    p = sub.add_parser("synth", help="generate a synthetic dataset")
    defaults = SynthParams()
    p.add_argument("--K", type=int, default=defaults.K)
    p.add_argument("--L", type=int, default=defaults.L)
    p.add_argument("--seed", type=int, default=defaults.seed)
    _add_synth_args(p)
    p.add_argument("--out-x", required=True)
    p.add_argument("--out-w", required=True)
    p.add_argument("--out-h", required=True)
    p.add_argument("--verify", action="store_true", help="re-read outputs and check them")
    p.set_defaults(handler=cmd_synth)

    p = sub.add_parser("bench", help="compare solvers over seeds")
    p.add_argument("--input")
    p.add_argument("--synth", action="store_true", help="generate the data instead of reading --input")
    p.add_argument("--synth-seed", type=int, default=0)
    p.add_argument("--K", type=positive_int)
    p.add_argument("--L", type=positive_int)
    _add_synth_args(p)
    p.add_argument("--algorithms", type=algorithm_list, default=[a.value for a in Algorithm])
    p.add_argument("--seeds", type=int_list, default=[0])
    _add_solver_args(p)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--workers", type=positive_int, default=config.BENCH_WORKERS)
    p.add_argument("--no-timing", action="store_true")
    p.set_defaults(handler=cmd_bench)

    p = sub.add_parser("check-forms", help="cross-check the reconstruction forms")
    p.add_argument("--dims", type=dims_arg, help="N,T,K,L; random small dims per trial if omitted")
    p.add_argument("--trials", type=positive_int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=cmd_check_forms)

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--host", default=config.API_HOST)
    p.add_argument("--port", type=int, default=config.API_PORT)
    p.set_defaults(handler=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    config.setup_logging("DEBUG" if args.verbose else args.log_level)

    try:
        return args.handler(args)
    except CliExit as e:
        print(f"cnmf {args.command}: {e}", file=sys.stderr)
        return e.code
    except ValidationError as e:
        print(f"cnmf {args.command}: invalid parameters:\n{e}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as e:
        print(f"cnmf {args.command}: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except MatrixFormatError as e:
        print(f"cnmf {args.command}: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except InvalidInputError as e:
        print(f"cnmf {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CnmfError as e:
        logger.error("❌ %s: %s", type(e).__name__, e)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
