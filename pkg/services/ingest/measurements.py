"""RSS/RTT measurements and their conversion to a weighted problem."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np
import pandas as pd

from config import CLAMP_THRESHOLD, SIGMA_RSS_DBM, SIGMA_RTT_M
from core.errors import EmptyProblem, MalformedInput
from core.problem.types import TrilaterationProblem, WeightMatrix
from core.problem.validation import clamp_distances
from core.weights import rss_to_distance_squared, weights_rss, weights_toa
from services.ingest.anchors import AnchorParams, resolve_anchor
from services.logging_config import get_ingest_logger

logger = get_ingest_logger()


class MeasurementKind(str, Enum):
    RSS = "rss"   # dBm
    RTT = "rtt"   # meters, already converted from round-trip time


@dataclass(frozen=True)
class MeasurementRecord:
    anchor_id: str
    kind: MeasurementKind
    value: float


def load_measurements(path: str) -> list[MeasurementRecord]:
    """Read an ``anchor_id,kind,value`` CSV.

    Raises:
        MalformedInput: On missing columns, unknown kinds or non-numeric values.
    """
    try:
        frame = pd.read_csv(path, dtype={"anchor_id": str, "kind": str})
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise MalformedInput(f"Cannot parse measurement file {path}: {e}") from e
    missing = {"anchor_id", "kind", "value"} - set(frame.columns)
    if missing:
        raise MalformedInput(f"Measurement file {path} lacks columns: {', '.join(sorted(missing))}")

    records = []
    for row in frame.itertuples(index=False):
        try:
            kind = MeasurementKind(str(row.kind).strip().lower())
            value = float(row.value)
        except ValueError as e:
            raise MalformedInput(f"Invalid measurement row {tuple(row)}: {e}") from e
        records.append(MeasurementRecord(anchor_id=str(row.anchor_id).strip(), kind=kind, value=value))
    logger.info(f"Loaded {len(records)} measurements from {path}")
    return records


def build_problem(meas: Iterable[MeasurementRecord], anchors: dict[str, AnchorParams],
                  sigma_rss: float = SIGMA_RSS_DBM, sigma_rtt: float = SIGMA_RTT_M,
                  weighted: bool = True, clamp_threshold: float = CLAMP_THRESHOLD) -> TrilaterationProblem:
    """Convert measurements into one problem with diagonal weights.

    RSS rows come first, then RTT rows, each in input order. Distances are
    clamped before the weights are computed. An anchor measured several
    times contributes one row per measurement.

    Args:
        meas: Measurement records.
        anchors: Registry resolving anchor ids.
        sigma_rss: RSS noise standard deviation in dBm.
        sigma_rtt: RTT distance noise standard deviation in meters.
        weighted: Use model weights; False gives W = I.
        clamp_threshold: Lower bound applied to distances.

    Raises:
        UnknownAnchor: If a record references an unregistered anchor.
        EmptyProblem: If there are no measurements.
        MalformedInput: On negative RTT distances or RSS anchors without path loss parameters.
    """
    meas = list(meas)
    if not meas:
        raise EmptyProblem("No measurements to build a problem from")

    rss = [m for m in meas if m.kind == MeasurementKind.RSS]
    rtt = [m for m in meas if m.kind == MeasurementKind.RTT]
    senders, distances, weights = [], [], []

    if rss:
        rss_anchors = [resolve_anchor(anchors, m.anchor_id) for m in rss]
        without = [a.id for a in rss_anchors if not a.has_pathloss]
        if without:
            raise MalformedInput(f"RSS measurements need eta and c0 for anchors: {', '.join(without)}")
        eta = np.array([a.eta for a in rss_anchors])
        c0 = np.array([a.c0 for a in rss_anchors])
        values = np.array([m.value for m in rss])
        d = clamp_distances(np.sqrt(rss_to_distance_squared(values, c0, eta)), clamp_threshold)
        senders.extend(a.position for a in rss_anchors)
        distances.append(d)
        weights.append(weights_rss(d**2, eta, sigma_rss).values)

    if rtt:
        rtt_anchors = [resolve_anchor(anchors, m.anchor_id) for m in rtt]
        values = np.array([m.value for m in rtt])
        if np.any(values < 0) or not np.all(np.isfinite(values)):
            raise MalformedInput("RTT distances must be finite and nonnegative")
        d = clamp_distances(values, clamp_threshold)
        senders.extend(a.position for a in rtt_anchors)
        distances.append(d)
        weights.append(weights_toa(d, sigma_rtt).values)

    distances = np.concatenate(distances)
    W = WeightMatrix.diagonal(np.concatenate(weights)) if weighted else WeightMatrix.unit(distances.size)
    logger.info(f"Built problem from {len(rss)} RSS and {len(rtt)} RTT measurements (weighted={weighted})")
    return TrilaterationProblem.create(np.vstack(senders), distances, W)


def synthesize_measurements(anchors: Sequence[AnchorParams], x, kinds: Sequence[str] = ("rss", "rtt"),
                            sigma_rss: float = 0.0, sigma_rtt: float = 0.0,
                            rng: np.random.Generator | None = None) -> list[MeasurementRecord]:
    """Forward models: RTT = ‖x−s‖ + noise, RSS = c0 − 10η log₁₀‖x−s‖ + noise.

    One record per anchor and kind; RSS is skipped for anchors without path
    loss parameters.
    """
    rng = rng if rng is not None else np.random.default_rng()
    x = np.asarray(x, dtype=float)
    kinds = [MeasurementKind(k) for k in kinds]
    records = []
    for kind in kinds:
        for anchor in anchors:
            distance = float(np.linalg.norm(x - anchor.position))
            if kind == MeasurementKind.RTT:
                value = distance + (sigma_rtt * rng.standard_normal() if sigma_rtt > 0 else 0.0)
                records.append(MeasurementRecord(anchor.id, kind, max(value, 0.0)))
            elif anchor.has_pathloss:
                value = anchor.c0 - 10.0 * anchor.eta * np.log10(distance)
                if sigma_rss > 0:
                    value += sigma_rss * rng.standard_normal()
                records.append(MeasurementRecord(anchor.id, kind, float(value)))
    return records
