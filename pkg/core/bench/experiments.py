"""Benchmark experiments: Gaussian noise accuracy, degenerate scaling and timing.

Trials run serially or across a process pool; per-trial data depends only
on (seed, experiment index, trial index), so both paths give identical errors.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np
import pandas as pd
from tqdm import tqdm

from config import (
    BENCH_PROGRESS,
    BENCH_THREADS,
    DEGEN_DIM,
    DEGEN_SENDERS,
    ML_BENCH_MAX_ITER,
    NOISE_DIM,
    NOISE_SENDERS,
    SUCCESS_THRESHOLD,
    TIMING_BUDGET_SECONDS,
)
from core.baselines import RefineOptions, ml_cost, refine_ml, solve_linear
from core.bench.synthetic import SynthConfig, gen_degenerate, gen_synthetic
from core.errors import MalformedInput, NoConvergence, TrilaterationError
from core.problem.types import TrilaterationProblem, WeightMatrix
from core.solver import SolverOptions, solve, solve_simple
from services.logging_config import get_bench_logger

logger = get_bench_logger()

DEFAULT_SOLVERS = ("alg2", "alg1", "linear", "ml")
ML_INITS = ("truth", "alg2", "linear")
MIN_TIMING_REPS = 100

_BENCH_OPTIONS = SolverOptions(always_return=True)
# reference refinement: a run that hits the cap is scored at its last accepted iterate
_ML_REFERENCE = RefineOptions(max_iter=ML_BENCH_MAX_ITER)


@dataclass(frozen=True)
class TrialResult:
    """Outcome of one solver on one instance.

    ``error`` is the distance from the closest returned point to the truth,
    or inf when the solver failed or returned nothing.
    """

    error: float
    success: bool
    runtime: float

    @classmethod
    def from_points(cls, points: Sequence[np.ndarray], truth: np.ndarray, runtime: float,
                    threshold: float = SUCCESS_THRESHOLD) -> TrialResult:
        if not points:
            return cls(error=float("inf"), success=False, runtime=runtime)
        error = min(float(np.linalg.norm(x - truth)) for x in points)
        if not np.isfinite(error):
            error = float("inf")
        return cls(error=error, success=error < threshold, runtime=runtime)


@dataclass
class ExperimentResult:
    """Per-trial rows, aggregated summary and run metadata of one experiment."""

    name: str
    trials: pd.DataFrame
    summary: pd.DataFrame
    metadata: dict = field(default_factory=dict)


# --- Solver registry ---

def _alg2(p: TrilaterationProblem, truth, ml_init: str) -> list[np.ndarray]:
    return list(solve(p, _BENCH_OPTIONS).points)


def _alg1(p: TrilaterationProblem, truth, ml_init: str) -> list[np.ndarray]:
    return [solve_simple(p, cond_limit=None)]


def _linear(p: TrilaterationProblem, truth, ml_init: str) -> list[np.ndarray]:
    return [solve_linear(p)]


def _unweighted(p: TrilaterationProblem, truth, ml_init: str) -> list[np.ndarray]:
    return list(solve(p.replace(weights=WeightMatrix.unit(p.m)), _BENCH_OPTIONS).points)


def _ml(p: TrilaterationProblem, truth, ml_init: str) -> list[np.ndarray]:
    if ml_init == "truth":
        start = truth
    elif ml_init == "alg2":
        candidates = solve(p, _BENCH_OPTIONS).points
        if not candidates:
            return []
        start = min(candidates, key=lambda x: ml_cost(x, p))
    else:
        start = solve_linear(p)
    try:
        return [refine_ml(p, start, _ML_REFERENCE)]
    except NoConvergence as e:
        logger.debug(f"ML reference stopped at the iteration cap: {e}")
        return [e.last] if e.last is not None else []


SOLVERS: dict[str, Callable[[TrilaterationProblem, np.ndarray, str], list[np.ndarray]]] = {
    "alg2": _alg2,
    "alg1": _alg1,
    "linear": _linear,
    "ml": _ml,
    "unweighted": _unweighted,
}


def _check_solvers(solvers: Iterable[str], ml_init: str) -> tuple[str, ...]:
    solvers = tuple(solvers)
    unknown = [name for name in solvers if name not in SOLVERS]
    if unknown:
        raise MalformedInput(f"Unknown solvers: {', '.join(unknown)}; choose from {', '.join(SOLVERS)}")
    if ml_init not in ML_INITS:
        raise MalformedInput(f"Unknown ML initialization '{ml_init}'; choose from {', '.join(ML_INITS)}")
    return solvers


def _check_sweep(values: Sequence[float], trials: int, label: str):
    if trials < 1 or not values:
        raise MalformedInput(f"Need at least one {label} and one trial, got {len(values)} values, {trials} trials")
    floats = [float(v) for v in values]
    if len(set(floats)) != len(floats):
        raise MalformedInput(f"Repeated {label} values in sweep: {floats}")


def _ml_reference_metadata() -> dict:
    return {"ml_max_iter": _ML_REFERENCE.max_iter, "ml_at_iteration_cap": "last_iterate"}


def run_trial(p: TrilaterationProblem, truth: np.ndarray, solver: str, ml_init: str = "truth") -> TrialResult:
    """Run one registered solver; solver errors count as failures."""
    start = time.perf_counter()
    try:
        points = SOLVERS[solver](p, truth, ml_init)
    except (TrilaterationError, np.linalg.LinAlgError) as e:
        logger.debug(f"{solver} failed: {e}")
        points = []
    return TrialResult.from_points(points, truth, time.perf_counter() - start)


# --- Workers (module level so the process pool can pickle them) ---

def _noise_task(task: tuple) -> list[dict]:
    stream, sigma, trial, seed, dim, m, solvers, ml_init = task
    problem, truth = gen_synthetic(SynthConfig(dim=dim, sender_count=m, noise_sigma=sigma, seed=seed),
                                   trial=trial, stream=stream)
    rows = []
    for solver in solvers:
        result = run_trial(problem, truth, solver, ml_init)
        rows.append({"sigma": sigma, "trial": trial, "solver": solver, "error": result.error,
                     "success": result.success, "runtime": result.runtime})
    return rows


def _degen_task(task: tuple) -> list[dict]:
    stream, scale, trial, seed, dim, m, solvers, ml_init = task
    problem, truth = gen_degenerate(scale, seed=seed, trial=trial, stream=stream, dim=dim, sender_count=m)
    rows = []
    for solver in solvers:
        result = run_trial(problem, truth, solver, ml_init)
        rows.append({"scale": scale, "trial": trial, "solver": solver, "error": result.error,
                     "success": result.success, "runtime": result.runtime})
    return rows


def _run_tasks(worker: Callable[[tuple], list[dict]], tasks: list[tuple], threads: int,
               progress: bool, desc: str) -> pd.DataFrame:
    rows: list[dict] = []
    if threads > 1:
        logger.info(f"{desc}: running {len(tasks)} trials on {threads} processes")
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = pool.map(worker, tasks, chunksize=max(1, len(tasks) // (threads * 8)))
            for chunk in tqdm(results, total=len(tasks), desc=desc, disable=not progress):
                rows.extend(chunk)
    else:
        for task in tqdm(tasks, desc=desc, disable=not progress):
            rows.extend(worker(task))
    # rows are sorted so aggregation does not depend on completion order
    frame = pd.DataFrame(rows)
    return frame.sort_values(["solver", frame.columns[0], "trial"], kind="stable").reset_index(drop=True)


def run_noise_experiment(sigmas: Sequence[float], trials: int, seed: int = 0,
                         solvers: Sequence[str] = DEFAULT_SOLVERS, dim: int = NOISE_DIM,
                         sender_count: int = NOISE_SENDERS, ml_init: str = "truth",
                         threads: int = BENCH_THREADS, progress: bool = BENCH_PROGRESS) -> ExperimentResult:
    """Accuracy under Gaussian range noise.

    Errors are normalized by σ; rows with σ = 0 keep raw errors.

    Returns:
        ExperimentResult whose summary has columns sigma, solver, mean, median, q1, q3.
    """
    _check_sweep(sigmas, trials, "sigma")
    solvers = _check_solvers(solvers, ml_init)
    tasks = [(stream, float(sigma), trial, seed, dim, sender_count, solvers, ml_init)
             for stream, sigma in enumerate(sigmas) for trial in range(trials)]
    logger.info(f"Noise experiment: sigmas={list(sigmas)}, trials={trials}, seed={seed}, ml_init={ml_init}")
    frame = _run_tasks(_noise_task, tasks, threads, progress, "Noise trials")

    frame["normalized_error"] = frame["error"] / frame["sigma"].where(frame["sigma"] > 0, 1.0)
    grouped = frame.groupby(["sigma", "solver"], sort=False)["normalized_error"]
    summary = pd.DataFrame({
        "mean": grouped.mean(),
        "median": grouped.median(),
        "q1": grouped.quantile(0.25),
        "q3": grouped.quantile(0.75),
    }).reset_index()
    summary = _order(summary, "sigma", sigmas, solvers)
    metadata = {"experiment": "noise", "sigmas": [float(s) for s in sigmas], "trials": trials, "seed": seed,
                "dim": dim, "sender_count": sender_count, "solvers": list(solvers), "ml_init": ml_init,
                **_ml_reference_metadata()}
    return ExperimentResult(name="noise", trials=frame, summary=summary, metadata=metadata)


def run_degen_experiment(scales: Sequence[float], trials: int, seed: int = 0,
                         solvers: Sequence[str] = DEFAULT_SOLVERS, dim: int = DEGEN_DIM,
                         sender_count: int = DEGEN_SENDERS, ml_init: str = "truth",
                         threads: int = BENCH_THREADS, progress: bool = BENCH_PROGRESS) -> ExperimentResult:
    """Stability as the senders approach a common plane.

    Returns:
        ExperimentResult whose summary has columns scale, solver, median_error, success_rate.
    """
    _check_sweep(scales, trials, "scale")
    solvers = _check_solvers(solvers, ml_init)
    tasks = [(stream, float(scale), trial, seed, dim, sender_count, solvers, ml_init)
             for stream, scale in enumerate(scales) for trial in range(trials)]
    logger.info(f"Degenerate experiment: {len(scales)} scales, trials={trials}, seed={seed}")
    frame = _run_tasks(_degen_task, tasks, threads, progress, "Degenerate trials")

    grouped = frame.groupby(["scale", "solver"], sort=False)
    summary = pd.DataFrame({
        "median_error": grouped["error"].median(),
        "success_rate": grouped["success"].mean(),
    }).reset_index()
    summary = _order(summary, "scale", scales, solvers)
    metadata = {"experiment": "degen", "scales": [float(s) for s in scales], "trials": trials, "seed": seed,
                "dim": dim, "sender_count": sender_count, "solvers": list(solvers), "ml_init": ml_init,
                "success_threshold": SUCCESS_THRESHOLD, **_ml_reference_metadata()}
    return ExperimentResult(name="degen", trials=frame, summary=summary, metadata=metadata)


def run_timing(ms: Sequence[int], reps: int, seed: int = 0, solvers: Sequence[str] = DEFAULT_SOLVERS,
               dim: int = NOISE_DIM, budget_seconds: float = TIMING_BUDGET_SECONDS,
               progress: bool = BENCH_PROGRESS) -> ExperimentResult:
    """Median single-solve wall time per solver and sender count.

    Each (solver, m) pair runs ``reps`` noiseless instances or stops once
    ``budget_seconds`` of solve time has accumulated. Only the solve call
    is timed; ML starts at the ground truth.

    Raises:
        MalformedInput: If reps < 100.
    """
    if reps < MIN_TIMING_REPS:
        raise MalformedInput(f"Timing needs at least {MIN_TIMING_REPS} repetitions, got {reps}")
    solvers = _check_solvers(solvers, "truth")
    logger.info(f"Timing: m={list(ms)}, reps={reps}, budget={budget_seconds}s per cell")

    rows = []
    pool_size = min(reps, MIN_TIMING_REPS)
    for stream, m in enumerate(ms):
        cfg = SynthConfig(dim=dim, sender_count=int(m), seed=seed)
        instances = [gen_synthetic(cfg, trial=i, stream=stream) for i in range(pool_size)]
        for solver in tqdm(solvers, desc=f"Timing m={m}", disable=not progress):
            fn = SOLVERS[solver]
            samples = []
            spent = 0.0
            for rep in range(reps):
                problem, truth = instances[rep % pool_size]
                start = time.perf_counter()
                try:
                    fn(problem, truth, "truth")
                except (TrilaterationError, np.linalg.LinAlgError):
                    pass
                elapsed = time.perf_counter() - start
                samples.append(elapsed)
                spent += elapsed
                if spent > budget_seconds:
                    logger.info(f"Timing {solver} at m={m} hit the {budget_seconds}s budget after {rep + 1} reps")
                    break
            rows.append({"m": int(m), "solver": solver, "median_seconds": float(np.median(samples)),
                         "reps": len(samples)})

    summary = pd.DataFrame(rows)
    metadata = {"experiment": "timing", "ms": [int(m) for m in ms], "reps": reps, "seed": seed, "dim": dim,
                "solvers": list(solvers), "budget_seconds": budget_seconds}
    return ExperimentResult(name="timing", trials=summary.copy(), summary=summary, metadata=metadata)


def _order(summary: pd.DataFrame, key: str, values: Sequence[float], solvers: Sequence[str]) -> pd.DataFrame:
    key_rank = {float(v): i for i, v in enumerate(values)}
    solver_rank = {name: i for i, name in enumerate(solvers)}
    ordered = summary.assign(
        _k=summary[key].map(key_rank), _s=summary["solver"].map(solver_rank)
    ).sort_values(["_k", "_s"]).drop(columns=["_k", "_s"])
    return ordered.reset_index(drop=True)
