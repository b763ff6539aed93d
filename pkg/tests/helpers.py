"""Problem factories shared by several test modules."""

import numpy as np

from core.problem import TrilaterationProblem, WeightMatrix


def make_random_problem(rng: np.random.Generator, dim: int = 3, m: int = 6, sigma: float = 0.0,
                        weighted: bool = True):
    """Standard normal senders and receiver with optional range noise."""
    senders = rng.standard_normal((m, dim))
    truth = rng.standard_normal(dim)
    distances = np.abs(np.linalg.norm(senders - truth, axis=1) + sigma * rng.standard_normal(m))
    weights = WeightMatrix.diagonal(1.0 / (4.0 * distances**2)) if weighted else WeightMatrix.unit(m)
    return TrilaterationProblem.create(senders, distances, weights), truth


def gradient_roots_1d(p, gap: float = 1e-3):
    """Real roots of the cubic Σ_j w_j r_j (x − s_j) for a diagonal-weight 1-D problem.

    Returns None when two roots are closer than ``gap`` relative to their
    size, where the root count is numerically ambiguous.
    """
    s = p.senders[:, 0]
    d2 = p.distances**2
    w = p.weights.values
    coefficients = [
        np.sum(w),
        np.sum(w * -3.0 * s),
        np.sum(w * (3.0 * s**2 - d2)),
        np.sum(w * (d2 * s - s**3)),
    ]
    roots = np.roots(coefficients)
    size = 1.0 + np.abs(roots).max()
    separation = min(abs(a - b) for i, a in enumerate(roots) for b in roots[i + 1:])
    if separation < gap * size:
        return None
    return np.sort(roots.real[np.abs(roots.imag) <= 1e-7 * size])
