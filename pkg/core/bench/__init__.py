"""Synthetic instances and benchmark experiments."""

from .experiments import (
    DEFAULT_SOLVERS,
    ML_INITS,
    SOLVERS,
    ExperimentResult,
    TrialResult,
    run_degen_experiment,
    run_noise_experiment,
    run_timing,
    run_trial,
)
from .synthetic import SynthConfig, gen_degenerate, gen_synthetic, trial_rng

__all__ = [
    'DEFAULT_SOLVERS',
    'ML_INITS',
    'SOLVERS',
    'ExperimentResult',
    'SynthConfig',
    'TrialResult',
    'gen_degenerate',
    'gen_synthetic',
    'run_degen_experiment',
    'run_noise_experiment',
    'run_timing',
    'run_trial',
    'trial_rng',
]
