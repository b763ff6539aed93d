"""Linear least-squares trilateration with the constraint α = xᵀx dropped."""

import numpy as np

from core.errors import RankDeficient
from core.problem.types import TrilaterationProblem
from core.problem.validation import validate_problem


def linear_system(p: TrilaterationProblem) -> tuple[np.ndarray, np.ndarray]:
    """Rows (1, −2s_jᵀ) and right-hand side d_j² − s_jᵀs_j over unknowns (α, x)."""
    coefficients = np.hstack([np.ones((p.m, 1)), -2.0 * p.senders])
    rhs = p.distances**2 - np.einsum("ij,ij->i", p.senders, p.senders)
    return coefficients, rhs


def solve_linear(p: TrilaterationProblem) -> np.ndarray:
    """Least-squares solution of the relaxed linear system; α is discarded.

    Raises:
        RankDeficient: If m < n+1 or the senders lie in a common hyperplane.
    """
    p = validate_problem(p)
    if p.m < p.dim + 1:
        raise RankDeficient(f"Linear method needs at least {p.dim + 1} senders, got {p.m}")

    coefficients, rhs = linear_system(p)
    solution, _, rank, _ = np.linalg.lstsq(coefficients, rhs, rcond=None)
    if rank < p.dim + 1:
        raise RankDeficient(f"Linear system has rank {rank} < {p.dim + 1}")
    return solution[1:]
