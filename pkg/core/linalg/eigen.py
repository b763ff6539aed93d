"""Dense eigen routines for the small matrices produced by the solver.

The symmetric path diagonalizes the n×n matrix A; the general path returns
every eigenvalue of the (2n+1)×(2n+1) companion-like matrices. Both delegate
to LAPACK through numpy (balancing, Hessenberg reduction and shifted QR for
the general case), which is exact enough and fast at these sizes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from config import IMAG_TOL, SYMMETRY_TOL
from core.errors import DimensionMismatch, NoConvergence, NonFiniteInput, NoRealEigenvalue, NotSymmetric


@dataclass(frozen=True, eq=False)
class SymEig:
    """Orthogonal ``rotation`` Q and eigenvalues sorted descending."""

    rotation: np.ndarray
    values: np.ndarray


@dataclass(frozen=True, eq=False)
class EigenvalueList:
    """All eigenvalues of a real matrix, sorted by descending real then imaginary part."""

    real_parts: np.ndarray
    imag_parts: np.ndarray

    @property
    def values(self) -> np.ndarray:
        return self.real_parts + 1j * self.imag_parts

    def __len__(self) -> int:
        return self.real_parts.shape[0]

    def real_mask(self, imag_tol: float = IMAG_TOL) -> np.ndarray:
        """Entries whose imaginary part is negligible relative to their magnitude."""
        return np.abs(self.imag_parts) <= imag_tol * (1.0 + np.abs(self.real_parts))

    def real_values(self, imag_tol: float = IMAG_TOL) -> np.ndarray:
        return self.real_parts[self.real_mask(imag_tol)]


def sym_eig(S, sym_tol: float = SYMMETRY_TOL) -> SymEig:
    """Diagonalize a real symmetric matrix.

    Args:
        S: Symmetric n×n matrix.
        sym_tol: Accepted asymmetry relative to the largest entry.

    Returns:
        SymEig with Q·diag(values)·Qᵀ = S and values nonincreasing.

    Raises:
        NotSymmetric: If S is not square or not symmetric within tolerance.
    """
    S = np.asarray(S, dtype=float)
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        raise NotSymmetric(f"Expected a square matrix, got shape {S.shape}")
    if not np.all(np.isfinite(S)):
        raise NonFiniteInput("Matrix entries must be finite")
    scale = np.abs(S).max() if S.size else 0.0
    if np.abs(S - S.T).max(initial=0.0) > sym_tol * scale:
        raise NotSymmetric("Matrix is not symmetric")

    try:
        values, vectors = np.linalg.eigh(0.5 * (S + S.T))
    except np.linalg.LinAlgError as e:
        raise NoConvergence(f"Symmetric eigensolver failed: {e}") from e
    order = np.argsort(-values, kind="stable")
    return SymEig(rotation=vectors[:, order], values=values[order])


def all_eigenvalues(G) -> EigenvalueList:
    """Return every eigenvalue of a square real matrix, with multiplicity.

    Raises:
        DimensionMismatch: If G is not square.
        NonFiniteInput: If G has NaN/inf entries.
        NoConvergence: If the QR iteration does not converge.
    """
    G = np.asarray(G, dtype=float)
    if G.ndim != 2 or G.shape[0] != G.shape[1]:
        raise DimensionMismatch(f"Expected a square matrix, got shape {G.shape}")
    if not np.all(np.isfinite(G)):
        raise NonFiniteInput("Matrix entries must be finite")

    try:
        eigenvalues = np.linalg.eigvals(G)
    except np.linalg.LinAlgError as e:
        raise NoConvergence(f"Eigenvalue iteration did not converge: {e}") from e

    real_parts = np.real(eigenvalues).astype(float)
    imag_parts = np.imag(eigenvalues).astype(float)
    # lexsort keys are applied last-first
    order = np.lexsort((-imag_parts, -real_parts))
    return EigenvalueList(real_parts=real_parts[order], imag_parts=imag_parts[order])


def largest_real_eigenvalue(G, imag_tol: float = IMAG_TOL) -> float:
    """Largest eigenvalue whose imaginary part is within ``imag_tol·(1+|re|)``.

    Raises:
        NoRealEigenvalue: If no eigenvalue is numerically real.
    """
    return largest_real(all_eigenvalues(G), imag_tol)


def largest_real(eigenvalues: EigenvalueList, imag_tol: float = IMAG_TOL) -> float:
    """Same as largest_real_eigenvalue for an already computed spectrum."""
    real_values = eigenvalues.real_values(imag_tol)
    if real_values.size == 0:
        raise NoRealEigenvalue("No eigenvalue is real within tolerance")
    return float(real_values.max())


def shifted_diag_rank(lam: float, d_values, rel_tol: float) -> int:
    """Rank of λI − D for diagonal D.

    Counts entries with |λ − D_kk| > rel_tol·max(1, |λ|).
    """
    d_values = np.asarray(d_values, dtype=float)
    threshold = rel_tol * max(1.0, abs(lam))
    return int(np.count_nonzero(np.abs(lam - d_values) > threshold))
