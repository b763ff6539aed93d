"""Problem/solution data model and input validation."""

from .types import SolutionKind, SolutionSet, Sphere, TrilaterationProblem, WeightMatrix
from .validation import clamp_distances, validate_problem

__all__ = [
    'SolutionKind',
    'SolutionSet',
    'Sphere',
    'TrilaterationProblem',
    'WeightMatrix',
    'clamp_distances',
    'validate_problem',
]
