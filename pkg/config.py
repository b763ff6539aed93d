"""Configuration module for eigentrilat.

Contains numerical tolerances of the eigenvalue solver, noise-model
defaults for the measurement pipeline, local refinement settings,
benchmark harness parameters and logging settings.
"""

import os
from dotenv import load_dotenv

load_dotenv()

LOG_DIR = os.getenv("EIGENTRILAT_LOG_DIR", "logs")
LOG_LEVEL = os.getenv("EIGENTRILAT_LOG_LEVEL", "WARNING")

# --- Problem Validation ---
CLAMP_THRESHOLD = float(os.getenv("EIGENTRILAT_CLAMP_THRESHOLD", "1e-3"))  # Same length unit as senders

# --- Eigenvalue Solver ---
SYMMETRY_TOL = 1e-12                # Relative asymmetry accepted by sym_eig
IMAG_TOL = float(os.getenv("EIGENTRILAT_IMAG_TOL", "1e-8"))
RANK_TOL = float(os.getenv("EIGENTRILAT_RANK_TOL", "1e-8"))
RADICAND_TOL = 1e-8                 # Negative radicand below -tol*(1+lambda) is not roundoff
CONSISTENCY_TOL = 1e-8              # Kernel residual tolerance for singular shifts
NEAR_SINGULAR_COND = float(os.getenv("EIGENTRILAT_NEAR_SINGULAR_COND", "1e12"))

# --- Noise Models (Measurement Pipeline) ---
SIGMA_RSS_DBM = float(os.getenv("EIGENTRILAT_SIGMA_RSS_DBM", "5.0"))
SIGMA_RTT_M = float(os.getenv("EIGENTRILAT_SIGMA_RTT_M", "1.0"))

# --- ML Refinement (damped Gauss-Newton) ---
ML_MAX_ITER = 100
ML_DAMPING = 1e-3                   # Initial Levenberg damping
ML_DAMPING_FACTOR = 10.0            # Multiplied on reject, divided on accept
ML_DAMPING_MAX = 1e16               # Stagnation threshold
ML_TOL_PER_SENDER = 1e-10           # Gradient tolerance is this times m
ML_MIN_SENDER_DISTANCE = 1e-12
ML_BENCH_MAX_ITER = int(os.getenv("EIGENTRILAT_ML_BENCH_MAX_ITER", "10000"))  # Reference refinement in the benchmarks

# --- Benchmark Harness ---
SUCCESS_THRESHOLD = 1e-6
NOISE_TRIALS = int(os.getenv("EIGENTRILAT_NOISE_TRIALS", "1000"))
DEGEN_TRIALS = int(os.getenv("EIGENTRILAT_DEGEN_TRIALS", "200"))
TIMING_REPS = int(os.getenv("EIGENTRILAT_TIMING_REPS", "1000"))
TIMING_BUDGET_SECONDS = float(os.getenv("EIGENTRILAT_TIMING_BUDGET_SECONDS", "10"))
NOISE_DIM = 3
NOISE_SENDERS = 10
DEGEN_DIM = 3
DEGEN_SENDERS = 6
DEFAULT_SIGMAS = (0.001, 0.01, 0.1)
DEFAULT_TIMING_SENDERS = (4, 10, 100)
BENCH_THREADS = int(os.getenv("EIGENTRILAT_THREADS", "1"))
BENCH_OUTPUT_DIR = os.getenv("EIGENTRILAT_OUTPUT_DIR", "results")
BENCH_PROGRESS = os.getenv("EIGENTRILAT_PROGRESS", "1") not in ("0", "false", "no")
