"""Eigenvalue-based solver for the weighted squared-range cost."""

from .engine import (
    SolverOptions,
    StationaryPoint,
    build_M,
    build_MA,
    build_MD,
    lambda_max,
    simple_point,
    simple_solution,
    solve,
    solve_simple,
    solve_with_known,
    stationary_points,
)
from .normal import (
    NormalData,
    SpectralData,
    build_normal_data,
    cost_h,
    embed_known_coordinates,
    gradient_h,
    reduce_known_coordinates,
    residuals,
    spectral_data,
    to_world,
)

__all__ = [
    'NormalData',
    'SolverOptions',
    'SpectralData',
    'StationaryPoint',
    'build_M',
    'build_MA',
    'build_MD',
    'build_normal_data',
    'cost_h',
    'embed_known_coordinates',
    'gradient_h',
    'lambda_max',
    'reduce_known_coordinates',
    'residuals',
    'simple_point',
    'simple_solution',
    'solve',
    'solve_simple',
    'solve_with_known',
    'spectral_data',
    'stationary_points',
    'to_world',
]
