"""Deterministic synthetic trilateration instances.

Every trial draws from its own Philox stream keyed by (seed, experiment
index, trial index), so parallel and serial runs produce identical data.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from config import DEGEN_DIM, DEGEN_SENDERS, NOISE_DIM, NOISE_SENDERS
from core.errors import MalformedInput
from core.problem.types import TrilaterationProblem, WeightMatrix
from core.problem.validation import clamp_distances


@dataclass(frozen=True)
class SynthConfig:
    """Scene parameters of one synthetic instance family.

    ``degenerate_scale`` multiplies the first coordinate of every sender;
    0 makes the senders coplanar.
    """

    dim: int = NOISE_DIM
    sender_count: int = NOISE_SENDERS
    noise_sigma: float = 0.0
    seed: int = 0
    degenerate_scale: float | None = None

    def __post_init__(self):
        if self.dim < 1 or self.sender_count < 1:
            raise MalformedInput(f"Need dim ≥ 1 and at least one sender, got dim={self.dim}, m={self.sender_count}")
        if self.noise_sigma < 0:
            raise MalformedInput(f"Noise sigma must be nonnegative, got {self.noise_sigma}")
        if self.degenerate_scale is not None and not 0.0 <= self.degenerate_scale <= 1.0:
            raise MalformedInput(f"Degenerate scale must lie in [0, 1], got {self.degenerate_scale}")


def trial_rng(seed: int, *key: int) -> np.random.Generator:
    """Counter-based generator for the sub-stream identified by ``key``."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=tuple(key))))


def gen_synthetic(cfg: SynthConfig, trial: int = 0, stream: int = 0) -> tuple[TrilaterationProblem, np.ndarray]:
    """Draw senders and receiver from N(0, 1) and add N(0, σ) range noise.

    Distances are clamped and weighted with w_jj = 1/(4d_j²).

    Returns:
        Tuple of (problem, ground-truth receiver position).
    """
    rng = trial_rng(cfg.seed, stream, trial)
    senders = rng.standard_normal((cfg.sender_count, cfg.dim))
    truth = rng.standard_normal(cfg.dim)
    noise = rng.standard_normal(cfg.sender_count)

    if cfg.degenerate_scale is not None:
        senders[:, 0] *= cfg.degenerate_scale

    distances = clamp_distances(np.linalg.norm(senders - truth, axis=1) + cfg.noise_sigma * noise)
    weights = WeightMatrix.diagonal(1.0 / (4.0 * distances**2))
    problem = TrilaterationProblem(dim=cfg.dim, senders=senders, distances=distances, weights=weights)
    return problem, truth


def gen_degenerate(scale: float, seed: int = 0, trial: int = 0, stream: int = 0,
                   dim: int = DEGEN_DIM, sender_count: int = DEGEN_SENDERS) -> tuple[TrilaterationProblem, np.ndarray]:
    """Noiseless instance whose sender x-coordinates are multiplied by ``scale``."""
    cfg = SynthConfig(dim=dim, sender_count=sender_count, noise_sigma=0.0, seed=seed, degenerate_scale=scale)
    return gen_synthetic(cfg, trial=trial, stream=stream)
