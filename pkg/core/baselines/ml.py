"""Local maximum-likelihood refinement on range residuals ‖x−s_j‖ − d_j."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from config import (
    ML_DAMPING,
    ML_DAMPING_FACTOR,
    ML_DAMPING_MAX,
    ML_MAX_ITER,
    ML_MIN_SENDER_DISTANCE,
    ML_TOL_PER_SENDER,
)
from core.errors import NoConvergence, NonSmoothPoint
from core.problem.types import TrilaterationProblem
from services.logging_config import get_solver_logger

logger = get_solver_logger()


@dataclass(frozen=True)
class RefineOptions:
    """Damped Gauss-Newton settings.

    ``tol`` is the gradient norm target; None means ML_TOL_PER_SENDER·m.
    """

    max_iter: int = ML_MAX_ITER
    damping: float = ML_DAMPING
    damping_factor: float = ML_DAMPING_FACTOR
    damping_max: float = ML_DAMPING_MAX
    tol: float | None = None
    min_sender_distance: float = ML_MIN_SENDER_DISTANCE


def ml_cost(x, p: TrilaterationProblem) -> float:
    """Range objective Σ(‖x−s_j‖ − d_j)²."""
    ranges = np.linalg.norm(np.asarray(x, dtype=float) - p.senders, axis=1)
    return float(np.sum((ranges - p.distances) ** 2))


def refine_ml(p: TrilaterationProblem, x0, opts: RefineOptions | None = None) -> np.ndarray:
    """Refine x0 to a stationary point of Σ(‖x−s_j‖ − d_j)².

    Uses Gauss-Newton with Levenberg damping: the damping is divided by
    ``damping_factor`` after an accepted step and multiplied after a
    rejected one. Steps that land on a sender are rejected.

    Args:
        p: Problem providing senders and measured distances.
        x0: Starting point.
        opts: Iteration settings.

    Returns:
        The refined point; the objective never exceeds its value at x0.

    Raises:
        NonSmoothPoint: If x0 coincides with a sender.
        NoConvergence: If the iteration cap is reached first; its ``last``
            attribute holds the final accepted iterate.
    """
    opts = opts or RefineOptions()
    tol = opts.tol if opts.tol is not None else ML_TOL_PER_SENDER * p.m
    x = np.asarray(x0, dtype=float).copy()

    diff = x - p.senders
    ranges = np.linalg.norm(diff, axis=1)
    if np.any(ranges < opts.min_sender_distance):
        raise NonSmoothPoint(f"Starting point {x} coincides with a sender")
    errors = ranges - p.distances
    cost = float(errors @ errors)
    mu = opts.damping

    for iteration in range(opts.max_iter):
        jacobian = diff / ranges[:, None]
        gradient = jacobian.T @ errors
        grad_norm = float(np.linalg.norm(gradient))
        if grad_norm <= tol:
            logger.debug(f"ML refinement converged after {iteration} iterations (|grad|={grad_norm:.3e})")
            return x

        normal = jacobian.T @ jacobian
        while True:
            if mu > opts.damping_max:
                logger.debug(f"ML refinement stagnated after {iteration} iterations (|grad|={grad_norm:.3e})")
                return x
            try:
                step = np.linalg.solve(normal + mu * np.eye(p.dim), -gradient)
            except np.linalg.LinAlgError:
                mu *= opts.damping_factor
                continue

            candidate = x + step
            candidate_diff = candidate - p.senders
            candidate_ranges = np.linalg.norm(candidate_diff, axis=1)
            if np.any(candidate_ranges < opts.min_sender_distance):
                mu *= opts.damping_factor
                continue
            candidate_errors = candidate_ranges - p.distances
            candidate_cost = float(candidate_errors @ candidate_errors)
            if candidate_cost < cost:
                x, diff, ranges, errors, cost = candidate, candidate_diff, candidate_ranges, candidate_errors, candidate_cost
                mu = max(mu / opts.damping_factor, np.finfo(float).tiny)
                break
            mu *= opts.damping_factor

    raise NoConvergence(f"ML refinement did not converge in {opts.max_iter} iterations", last=x)
