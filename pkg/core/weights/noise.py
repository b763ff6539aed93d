"""Noise models and the weight matrices they induce.

Each model supplies a normalization transform Ψ_j applied to squared
distances. Linearizing Ψ_j at the measured d_j² gives the weights
w_ij = Ψ'_i(d_i²) P_ij Ψ'_j(d_j²) of the squared-distance cost.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from core.errors import MalformedInput, NonPositiveWeights, UnsupportedModel
from core.problem.types import TrilaterationProblem, WeightMatrix

LN10 = math.log(10.0)


def weights_toa(d, sigma) -> WeightMatrix:
    """Diagonal weights 1/(4σ_j²d_j²) for Gaussian noise on distances.

    Args:
        d: Clamped, strictly positive distances.
        sigma: Per-measurement or shared standard deviation.
    """
    d = np.asarray(d, dtype=float)
    sigma = np.broadcast_to(np.asarray(sigma, dtype=float), d.shape)
    return WeightMatrix.diagonal(1.0 / (4.0 * sigma**2 * d**2))


def rss_to_distance_squared(C, c0, eta):
    """Invert the log-distance path loss model: d² = 10^((C₀−C)/(5η))."""
    exponent = (np.asarray(c0, dtype=float) - np.asarray(C, dtype=float)) / (5.0 * np.asarray(eta, dtype=float))
    result = np.power(10.0, exponent)
    return float(result) if np.ndim(result) == 0 else result


def weights_rss(d2, eta, sigma_rss: float) -> WeightMatrix:
    """Diagonal weights (5η_j / (σ_RSS d_j² ln 10))² for log-normal RSS noise."""
    d2 = np.asarray(d2, dtype=float)
    eta = np.broadcast_to(np.asarray(eta, dtype=float), d2.shape)
    return WeightMatrix.diagonal((5.0 * eta / (sigma_rss * d2 * LN10)) ** 2)


def build_weight_matrix(psi_prime, P) -> WeightMatrix:
    """Combine transform derivatives with the precision matrix P.

    Args:
        psi_prime: Ψ'_j(d_j²) for every measurement.
        P: Precision matrix (inverse covariance of the residuals), either a
            vector holding its diagonal or a full symmetric matrix.

    Returns:
        Diagonal storage when P is diagonal, full storage otherwise.

    Raises:
        NonPositiveWeights: If some Ψ' is zero/non-finite or P is not SPD.
    """
    psi_prime = np.asarray(psi_prime, dtype=float).reshape(-1)
    if not np.all(np.isfinite(psi_prime)) or np.any(psi_prime == 0):
        raise NonPositiveWeights("Transform derivatives must be finite and nonzero")

    P = np.asarray(P, dtype=float)
    if P.ndim == 1:
        if np.any(P <= 0):
            raise NonPositiveWeights("Precision diagonal must be strictly positive")
        return WeightMatrix.diagonal(psi_prime**2 * P)

    if P.shape != (psi_prime.size, psi_prime.size) or not np.allclose(P, P.T, rtol=0, atol=1e-12 * np.abs(P).max()):
        raise NonPositiveWeights("Precision matrix must be square and symmetric")
    try:
        np.linalg.cholesky(P)
    except np.linalg.LinAlgError as e:
        raise NonPositiveWeights(f"Precision matrix is not positive definite: {e}") from e

    if np.count_nonzero(P - np.diag(np.diag(P))) == 0:
        return WeightMatrix.diagonal(psi_prime**2 * np.diag(P))
    return WeightMatrix.full(np.outer(psi_prime, psi_prime) * P)


class NoiseModel(ABC):
    """Normalization transform Ψ_j and residual precision for one noise type."""

    @abstractmethod
    def psi_prime(self, z: np.ndarray) -> np.ndarray:
        """Derivative Ψ'_j evaluated elementwise at squared distances z."""

    def psi(self, z: np.ndarray) -> np.ndarray:
        """Transform Ψ_j evaluated elementwise at squared distances z."""
        raise UnsupportedModel(f"{type(self).__name__} has no closed-form transform")

    def precision(self, m: int) -> np.ndarray:
        """Diagonal of the residual precision matrix P."""
        return np.ones(m)

    def weight_matrix(self, d) -> WeightMatrix:
        """Weights for (clamped) measured distances d."""
        d = np.asarray(d, dtype=float)
        return build_weight_matrix(self.psi_prime(d**2), self.precision(d.size))


@dataclass(frozen=True)
class GaussianDistance(NoiseModel):
    """Additive Gaussian noise on distances (TOA/RTT); Ψ(z) = √z."""

    sigma: float | tuple[float, ...] = 1.0

    def psi(self, z):
        return np.sqrt(z)

    def psi_prime(self, z):
        return 0.5 / np.sqrt(z)

    def precision(self, m):
        return 1.0 / np.broadcast_to(np.asarray(self.sigma, dtype=float), (m,)) ** 2

    def weight_matrix(self, d):
        return weights_toa(d, self.sigma)


@dataclass(frozen=True)
class LogNormalRss(NoiseModel):
    """Gaussian noise on RSS in dBm under the log-distance path loss model; Ψ(z) = 5η log₁₀ z."""

    eta: tuple[float, ...]
    c0: tuple[float, ...]
    sigma_rss: float

    def psi(self, z):
        return 5.0 * np.asarray(self.eta) * np.log10(z)

    def psi_prime(self, z):
        return 5.0 * np.asarray(self.eta) / (np.asarray(z) * LN10)

    def precision(self, m):
        return np.full(m, 1.0 / self.sigma_rss**2)

    def weight_matrix(self, d):
        d = np.asarray(d, dtype=float)
        return weights_rss(d**2, self.eta, self.sigma_rss)


@dataclass(frozen=True)
class CustomPsi(NoiseModel):
    """User-supplied Ψ'_j(d_j²) values without the transform itself."""

    psi_prime_at_d2: tuple[float, ...]

    def psi_prime(self, z):
        return np.asarray(self.psi_prime_at_d2, dtype=float)


@dataclass(frozen=True)
class Unit(NoiseModel):
    """Plain squared-range cost: Ψ(z) = z, W = I."""

    def psi(self, z):
        return np.asarray(z, dtype=float)

    def psi_prime(self, z):
        return np.ones_like(np.asarray(z, dtype=float))


def eval_h0(x, p: TrilaterationProblem, model: NoiseModel, P=None) -> float:
    """Exact normalized residual cost rᵀPr with r_j = Ψ_j(‖x−s_j‖²) − Ψ_j(d_j²).

    Args:
        x: Receiver position.
        p: Problem providing senders and distances.
        model: Noise model with a closed-form Ψ.
        P: Precision matrix (vector diagonal or full). Defaults to the model's.

    Raises:
        UnsupportedModel: For models without Ψ (CustomPsi).
    """
    x = np.asarray(x, dtype=float)
    z = np.sum((x - p.senders) ** 2, axis=1)
    r = model.psi(z) - model.psi(p.distances**2)
    if P is None:
        P = model.precision(p.m)
    P = np.asarray(P, dtype=float)
    if P.ndim == 1:
        return float(np.sum(P * r**2))
    return float(r @ P @ r)


def noise_model_from_dict(data: dict) -> NoiseModel:
    """Parse the noise-model JSON fragment.

    Accepts ``{"model": "toa", "sigma": ...}``,
    ``{"model": "rss", "sigma_rss": ..., "per_sender": [{"eta": ..., "c0": ...}]}``,
    ``{"model": "custom", "psi_prime": [...]}`` and ``{"model": "unit"}``.

    Raises:
        MalformedInput: On unknown models, missing keys or nonpositive parameters.
    """
    kind = data.get("model") if isinstance(data, dict) else None
    try:
        if kind == "toa":
            sigma = data.get("sigma", 1.0)
            sigma = tuple(float(s) for s in sigma) if isinstance(sigma, list) else float(sigma)
            model = GaussianDistance(sigma=sigma)
            positive = np.asarray(sigma)
        elif kind == "rss":
            senders = data["per_sender"]
            model = LogNormalRss(
                eta=tuple(float(entry["eta"]) for entry in senders),
                c0=tuple(float(entry["c0"]) for entry in senders),
                sigma_rss=float(data["sigma_rss"]),
            )
            positive = np.append(model.eta, model.sigma_rss)
        elif kind == "custom":
            model = CustomPsi(psi_prime_at_d2=tuple(float(v) for v in data["psi_prime"]))
            positive = np.ones(1)
        elif kind == "unit":
            return Unit()
        else:
            raise KeyError(f"unknown model {kind!r}")
    except (KeyError, TypeError, ValueError) as e:
        raise MalformedInput(f"Invalid noise model specification: {e}") from e

    if np.any(positive <= 0):
        raise MalformedInput(f"Noise parameters of '{kind}' model must be strictly positive")
    return model
