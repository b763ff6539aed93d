"""Input validation for trilateration problems."""

import numpy as np

from config import CLAMP_THRESHOLD, SYMMETRY_TOL
from core.errors import DimensionMismatch, NonFiniteInput, NonPositiveWeights
from core.problem.types import TrilaterationProblem, WeightMatrix


def clamp_distances(d, threshold: float = CLAMP_THRESHOLD) -> np.ndarray:
    """Clamp distances from below so distance-derived weights stay finite.

    Args:
        d: Nonnegative distances.
        threshold: Lower bound, in the problem's length unit.

    Returns:
        New array with every entry at least ``threshold``.
    """
    return np.maximum(np.asarray(d, dtype=float), threshold)


def validate_problem(p: TrilaterationProblem, clamp_threshold: float = CLAMP_THRESHOLD) -> TrilaterationProblem:
    """Check shapes, finiteness and weights, and clamp the distances.

    Idempotent: validating an already validated problem returns an equal problem.

    Args:
        p: Problem to validate.
        clamp_threshold: Lower bound for distances.

    Returns:
        Problem with clamped distances and exactly symmetric weights.

    Raises:
        DimensionMismatch: On inconsistent shapes or fewer than one sender.
        NonFiniteInput: On NaN/inf entries or negative distances.
        NonPositiveWeights: If W is not symmetric positive definite.
    """
    if not isinstance(p.dim, (int, np.integer)) or p.dim < 1:
        raise DimensionMismatch(f"Spatial dimension must be a positive integer, got {p.dim!r}")
    if p.senders.ndim != 2 or p.senders.shape[0] < 1:
        raise DimensionMismatch("At least one sender is required")
    if p.senders.shape[1] != p.dim:
        raise DimensionMismatch(
            f"Senders have {p.senders.shape[1]} coordinates but dim={p.dim}"
        )
    if p.distances.shape != (p.m,):
        raise DimensionMismatch(f"Expected {p.m} distances, got {p.distances.shape[0]}")

    if not (np.all(np.isfinite(p.senders)) and np.all(np.isfinite(p.distances))):
        raise NonFiniteInput("Senders and distances must be finite")
    if np.any(p.distances < 0):
        raise NonFiniteInput(f"Distances must be nonnegative, got min {p.distances.min()}")

    weights = _check_weights(p.weights, p.m)
    return p.replace(distances=clamp_distances(p.distances, clamp_threshold), weights=weights)


def _check_weights(weights: WeightMatrix, m: int) -> WeightMatrix:
    values = weights.values
    if weights.is_diagonal:
        if values.shape != (m,):
            raise DimensionMismatch(f"Expected {m} diagonal weights, got {values.shape[0]}")
        if not np.all(np.isfinite(values)):
            raise NonFiniteInput("Weights must be finite")
        if np.any(values <= 0):
            raise NonPositiveWeights("Diagonal weights must be strictly positive")
        return weights

    if values.shape != (m, m):
        raise DimensionMismatch(f"Expected {m}x{m} weight matrix, got {values.shape}")
    if not np.all(np.isfinite(values)):
        raise NonFiniteInput("Weights must be finite")
    scale = np.abs(values).max()
    if np.abs(values - values.T).max() > SYMMETRY_TOL * scale:
        raise NonPositiveWeights("Weight matrix is not symmetric")
    symmetric = 0.5 * (values + values.T)
    try:
        np.linalg.cholesky(symmetric)
    except np.linalg.LinAlgError as e:
        raise NonPositiveWeights(f"Weight matrix is not positive definite: {e}") from e
    return WeightMatrix.full(symmetric)
