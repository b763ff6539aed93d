"""Least-squares fit of the log-distance path loss model C = c0 − 10η log₁₀(d)."""

import numpy as np
import pandas as pd

from core.errors import DegenerateFit, InsufficientData, MalformedInput
from services.logging_config import get_ingest_logger

logger = get_ingest_logger()


def calibrate_pathloss(records) -> tuple[float, float]:
    """Fit (c0, eta) to (known distance, RSS dBm) pairs.

    Args:
        records: Iterable of (distance, rss_dbm) with distance > 0.

    Returns:
        Tuple (c0, eta).

    Raises:
        InsufficientData: With fewer than two records.
        DegenerateFit: If all distances are equal.
        MalformedInput: On nonpositive or non-finite values.
    """
    data = np.asarray(list(records), dtype=float).reshape(-1, 2)
    if data.shape[0] < 2:
        raise InsufficientData(f"Calibration needs at least 2 records, got {data.shape[0]}")
    distances, rss = data[:, 0], data[:, 1]
    if not np.all(np.isfinite(data)) or np.any(distances <= 0):
        raise MalformedInput("Calibration distances must be positive and all values finite")

    log_d = np.log10(distances)
    if np.ptp(log_d) == 0:
        raise DegenerateFit("All calibration distances are equal; the exponent is unidentifiable")

    design = np.column_stack([np.ones_like(log_d), -10.0 * log_d])
    (c0, eta), residuals, _, _ = np.linalg.lstsq(design, rss, rcond=None)
    rms = float(np.sqrt(residuals[0] / data.shape[0])) if residuals.size else 0.0
    logger.info(f"Path loss fit: c0={c0:.3f} dBm, eta={eta:.3f}, rms={rms:.3f} dB over {data.shape[0]} records")
    return float(c0), float(eta)


def load_calibration(path: str) -> list[tuple[float, float]]:
    """Read a ``distance,rss_dbm`` CSV."""
    try:
        frame = pd.read_csv(path)
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise MalformedInput(f"Cannot parse calibration file {path}: {e}") from e
    missing = {"distance", "rss_dbm"} - set(frame.columns)
    if missing:
        raise MalformedInput(f"Calibration file {path} lacks columns: {', '.join(sorted(missing))}")
    try:
        values = frame[["distance", "rss_dbm"]].astype(float).to_numpy()
    except ValueError as e:
        raise MalformedInput(f"Calibration file {path} has non-numeric values: {e}") from e
    return [(float(d), float(c)) for d, c in values]
