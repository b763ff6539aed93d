"""Reference solvers used by the benchmarks."""

from .linear import linear_system, solve_linear
from .ml import RefineOptions, ml_cost, refine_ml

__all__ = [
    'RefineOptions',
    'linear_system',
    'ml_cost',
    'refine_ml',
    'solve_linear',
]
