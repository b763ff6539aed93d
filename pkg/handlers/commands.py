"""Command handlers for the eigentrilat CLI.

Each handler takes the parsed argparse namespace and returns the process
exit code; library errors propagate to ``main`` which maps them to 1.
"""

import json
import sys

from config import (
    BENCH_OUTPUT_DIR,
    BENCH_THREADS,
    DEFAULT_SIGMAS,
    DEFAULT_TIMING_SENDERS,
    DEGEN_TRIALS,
    NOISE_TRIALS,
    SIGMA_RSS_DBM,
    SIGMA_RTT_M,
    TIMING_REPS,
)
from core.baselines import refine_ml
from core.bench import run_degen_experiment, run_noise_experiment, run_timing
from core.errors import MalformedInput, NonSmoothPoint, NoConvergence
from core.problem.types import SolutionSet, TrilaterationProblem
from core.solver import SolverOptions, simple_solution, solve_with_known
from services.ingest import build_problem, calibrate_pathloss, load_anchors, load_calibration, load_measurements
from services.logging_config import get_solver_logger
from services.reports import write_reports
from utils.formatters import format_calibration, format_frame, format_solution

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_ILL_DEFINED = 2

DEFAULT_SCALES = [10.0 ** -e for e in range(9)]


def _read_text(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except UnicodeDecodeError as e:
        raise MalformedInput(f"{path} is not valid UTF-8 text: {e}") from e


def _emit(text: str, output: str | None):
    if output:
        with open(output, "w", encoding="utf-8") as f:
            f.write(text + "\n")
    else:
        print(text)


def load_problem(path: str) -> TrilaterationProblem:
    """Read a problem JSON file (``-`` for stdin)."""
    try:
        data = json.loads(_read_text(path))
    except json.JSONDecodeError as e:
        raise MalformedInput(f"Problem file is not valid JSON: {e}") from e
    return TrilaterationProblem.from_dict(data)


def _solver_options(args) -> SolverOptions:
    options = {"report_sphere": getattr(args, "report_sphere", False),
               "always_return": getattr(args, "always_return", False)}
    if args.rank_tol is not None:
        options["rank_tol"] = args.rank_tol
    return SolverOptions(**options)


def _solve_and_report(problem: TrilaterationProblem, args) -> int:
    opts = _solver_options(args)
    known = dict(args.known_coord or [])
    if args.simple:
        if known:
            raise MalformedInput("--simple cannot be combined with --known-coord")
        solution = simple_solution(problem, opts)
    else:
        solution = solve_with_known(problem, known, opts)

    extra = {}
    if args.refine_ml and solution.points:
        extra["refined"] = [x.tolist() for x in _refine(problem, solution)]
    _emit(format_solution(solution, args.format, extra), args.output)
    return EXIT_OK if solution.is_determined else EXIT_ILL_DEFINED


def _refine(problem: TrilaterationProblem, solution: SolutionSet) -> list:
    refined = []
    for x in solution.points:
        try:
            refined.append(refine_ml(problem, x))
        except (NonSmoothPoint, NoConvergence) as e:
            get_solver_logger().warning(f"ML refinement of {x.tolist()} failed: {e}")
            refined.append(x)
    return refined


def cmd_solve(args) -> int:
    """Solve a problem JSON file.

    Exit code 0 for a unique point or pair, 2 for a continuum.
    """
    return _solve_and_report(load_problem(args.input), args)


def cmd_locate(args) -> int:
    """Locate a receiver from a measurement CSV and an anchor registry."""
    anchors = load_anchors(args.anchors)
    measurements = load_measurements(args.input)
    problem = build_problem(
        measurements, anchors,
        sigma_rss=args.sigma_rss if args.sigma_rss is not None else SIGMA_RSS_DBM,
        sigma_rtt=args.sigma_rtt if args.sigma_rtt is not None else SIGMA_RTT_M,
        weighted=not args.unweighted,
    )
    return _solve_and_report(problem, args)


def cmd_bench(args) -> int:
    """Run one experiment and write its reports into --out-dir."""
    out_dir = args.out_dir or BENCH_OUTPUT_DIR
    threads = args.threads if args.threads is not None else BENCH_THREADS
    progress = not args.no_progress
    solvers = args.solvers
    kwargs = {"solvers": solvers} if solvers else {}

    if args.kind == "timing":
        ms = args.m or list(DEFAULT_TIMING_SENDERS)
        reps = args.reps if args.reps is not None else TIMING_REPS
        result = run_timing(ms, reps, seed=args.seed, progress=progress, **kwargs)
    else:
        if args.m is not None and len(args.m) != 1:
            raise MalformedInput(f"--m takes a single sender count for '{args.kind}', got {args.m}")
        if args.m:
            kwargs["sender_count"] = args.m[0]
        if args.kind == "noise":
            result = run_noise_experiment(args.sigmas or list(DEFAULT_SIGMAS), args.trials or NOISE_TRIALS, seed=args.seed,
                                          ml_init=args.ml_init, threads=threads, progress=progress, **kwargs)
        else:
            result = run_degen_experiment(args.scales or DEFAULT_SCALES, args.trials or DEGEN_TRIALS, seed=args.seed,
                                          ml_init=args.ml_init, threads=threads, progress=progress, **kwargs)

    write_reports(result, out_dir, write_trials=args.write_trials)
    _emit(format_frame(result.summary, args.format), args.output)
    return EXIT_OK


def cmd_calibrate(args) -> int:
    """Fit path loss parameters from a ``distance,rss_dbm`` CSV."""
    c0, eta = calibrate_pathloss(load_calibration(args.input))
    _emit(format_calibration(c0, eta, args.format), args.output)
    return EXIT_OK


__all__ = [
    "EXIT_ERROR",
    "EXIT_ILL_DEFINED",
    "EXIT_OK",
    "cmd_bench",
    "cmd_calibrate",
    "cmd_locate",
    "cmd_solve",
    "load_problem",
]
