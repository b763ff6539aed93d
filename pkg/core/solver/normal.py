"""Normal form of the weighted squared-distance cost.

Normalizing the weights to unit sum and translating the senders by their
weighted centroid turns the gradient of

    h(x) = ¼ Σ_ij w_ij (‖x−s_i‖² − d_i²)(‖x−s_j‖² − d_j²)

into (xᵀx)x − Ax + g. Diagonalizing A = QDQᵀ gives the rotated form
(yᵀy)y − Dy + b with b = Qᵀg.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from core.errors import AllCoordinatesKnown, DimensionMismatch
from core.linalg import sym_eig
from core.problem.types import TrilaterationProblem


@dataclass(frozen=True, eq=False)
class NormalData:
    """Reduced pair (A, g) and the normalizing translation t."""

    A: np.ndarray
    g: np.ndarray
    t: np.ndarray

    @property
    def dim(self) -> int:
        return self.g.shape[0]


@dataclass(frozen=True, eq=False)
class SpectralData:
    """Rotation Q, eigenvalues of A sorted descending, and b = Qᵀg."""

    Q: np.ndarray
    d_values: np.ndarray
    b: np.ndarray

    @property
    def dim(self) -> int:
        return self.b.shape[0]


def build_normal_data(p: TrilaterationProblem) -> NormalData:
    """Normalize weights, translate senders and assemble A and g.

    A = Σ w_ij (d_i² − s_iᵀs_i) I − 2 Σ w_ij s_j s_iᵀ and
    g = Σ w_ij (d_i² − s_iᵀs_i) s_j, over translated senders.
    """
    weights = p.weights.scaled(1.0 / p.weights.total())
    row_sums = weights.row_sums()

    t = row_sums @ p.senders
    senders = p.senders - t
    c = p.distances**2 - np.einsum("ij,ij->i", senders, senders)

    if weights.is_diagonal:
        sws = (senders * weights.values[:, None]).T @ senders
    else:
        sws = senders.T @ weights.values @ senders
    A = (row_sums @ c) * np.eye(p.dim) - 2.0 * sws
    g = senders.T @ weights.matvec(c)
    return NormalData(A=0.5 * (A + A.T), g=g, t=t)


def spectral_data(nd: NormalData) -> SpectralData:
    """Diagonalize A and rotate g into its eigenbasis.

    Raises:
        NotSymmetric: Propagated from the symmetric eigensolver.
    """
    eig = sym_eig(nd.A)
    return SpectralData(Q=eig.rotation, d_values=eig.values, b=eig.rotation.T @ nd.g)


def to_world(sd: SpectralData, nd: NormalData, y) -> np.ndarray:
    """Undo rotation and translation: x = Qy + t."""
    return sd.Q @ np.asarray(y, dtype=float) + nd.t


def residuals(x, p: TrilaterationProblem) -> np.ndarray:
    """Squared-range residuals ‖x−s_j‖² − d_j²."""
    x = np.asarray(x, dtype=float)
    return np.sum((x - p.senders) ** 2, axis=1) - p.distances**2


def cost_h(x, p: TrilaterationProblem) -> float:
    """Weighted squared-range cost ¼ rᵀWr."""
    return 0.25 * p.weights.quadratic(residuals(x, p))


def gradient_h(x, p: TrilaterationProblem) -> np.ndarray:
    """Gradient Σ_ij w_ij r_i (x − s_j) of cost_h."""
    x = np.asarray(x, dtype=float)
    wr = p.weights.matvec(residuals(x, p))
    return wr.sum() * x - p.senders.T @ wr


def reduce_known_coordinates(p: TrilaterationProblem, known: dict[int, float]) -> TrilaterationProblem:
    """Eliminate known receiver coordinates.

    With x'' the known coordinates, the reduced squared distances are
    d_j² − ‖x''−s''_j‖², clamped at zero when a measurement is shorter than
    the known offset. Weights are unchanged.

    Args:
        p: Problem in R^n.
        known: Map from coordinate index to its known value.

    Returns:
        Problem in R^(n−k) over the unknown coordinates, in ascending index order.

    Raises:
        AllCoordinatesKnown: If every coordinate is known.
        DimensionMismatch: If an index is outside 0..n−1.
    """
    if not known:
        return p
    indices = sorted(known)
    if indices[0] < 0 or indices[-1] >= p.dim:
        raise DimensionMismatch(f"Known coordinate indices {indices} out of range for dim={p.dim}")
    if len(indices) >= p.dim:
        raise AllCoordinatesKnown(f"All {p.dim} coordinates are known; nothing to solve")

    free = [i for i in range(p.dim) if i not in known]
    values = np.array([known[i] for i in indices], dtype=float)
    offsets = np.sum((values - p.senders[:, indices]) ** 2, axis=1)
    reduced_sq = np.maximum(p.distances**2 - offsets, 0.0)
    return TrilaterationProblem(
        dim=len(free),
        senders=p.senders[:, free],
        distances=np.sqrt(reduced_sq),
        weights=p.weights,
    )


def embed_known_coordinates(x_reduced, known: dict[int, float], dim: int) -> np.ndarray:
    """Insert known coordinates back into a reduced solution."""
    x = np.empty(dim)
    free = [i for i in range(dim) if i not in known]
    x[free] = np.asarray(x_reduced, dtype=float)
    for index, value in known.items():
        x[index] = value
    return x
