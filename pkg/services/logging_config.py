"""Centralized logging configuration."""

import logging
import os
import sys

from config import LOG_LEVEL


def setup_logging(level: str | int | None = None, log_dir: str | None = None):
    """Configure all system loggers.

    Loggers:
        - Solver: rank classification and eigenvalue fallbacks
        - Bench: experiment progress and summaries
        - Ingest: measurement loading and problem assembly

    Args:
        level: Logging level name or number. Defaults to LOG_LEVEL.
        log_dir: If given, the bench logger also writes to bench.log there.

    Returns:
        Tuple of (solver, bench, ingest) loggers.
    """
    if level is None:
        level = LOG_LEVEL
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())

    # --- Solver logger ---
    solver_logger = logging.getLogger("Solver")
    _reset(solver_logger, level)
    solver_handler = logging.StreamHandler(sys.stderr)
    solver_handler.setFormatter(
        logging.Formatter('%(asctime)s - [Solver] - %(levelname)s - %(message)s')
    )
    solver_logger.addHandler(solver_handler)

    # --- Bench logger ---
    bench_logger = logging.getLogger("Bench")
    _reset(bench_logger, level)
    bench_handler = logging.StreamHandler(sys.stderr)
    bench_handler.setFormatter(
        logging.Formatter('%(asctime)s - [Bench] - %(message)s')
    )
    bench_logger.addHandler(bench_handler)

    if log_dir is not None:
        os.makedirs(log_dir, exist_ok=True)
        bench_file_handler = logging.FileHandler(
            os.path.join(log_dir, "bench.log"),
            encoding='utf-8'
        )
        bench_file_handler.setFormatter(
            logging.Formatter('%(asctime)s - %(levelname)s - %(message)s')
        )
        bench_logger.addHandler(bench_file_handler)

    # --- Ingest logger ---
    ingest_logger = logging.getLogger("Ingest")
    _reset(ingest_logger, level)
    ingest_handler = logging.StreamHandler(sys.stderr)
    ingest_handler.setFormatter(
        logging.Formatter('%(asctime)s - [Ingest] - %(message)s')
    )
    ingest_logger.addHandler(ingest_handler)

    solver_logger.debug("Logging system initialized")

    return solver_logger, bench_logger, ingest_logger


def _reset(logger: logging.Logger, level: int):
    """Drop handlers from a previous setup so repeated CLI calls don't duplicate output."""
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()
    logger.setLevel(level)
    logger.propagate = False


def get_solver_logger():
    """Return the solver logger."""
    return logging.getLogger("Solver")


def get_bench_logger():
    """Return the bench logger."""
    return logging.getLogger("Bench")


def get_ingest_logger():
    """Return the ingest logger."""
    return logging.getLogger("Ingest")


__all__ = ["setup_logging", "get_solver_logger", "get_bench_logger", "get_ingest_logger"]
