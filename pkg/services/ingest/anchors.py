"""Anchor registry: sender positions and per-anchor path loss parameters."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from core.errors import DimensionMismatch, MalformedInput, UnknownAnchor
from services.logging_config import get_ingest_logger

logger = get_ingest_logger()


@dataclass(frozen=True, eq=False)
class AnchorParams:
    """A fixed sender with optional log-distance path loss parameters.

    ``eta`` is the path loss exponent and ``c0`` the RSS in dBm at unit
    distance; both are only required for RSS measurements.
    """

    id: str
    position: np.ndarray
    eta: float | None = None
    c0: float | None = None

    def __post_init__(self):
        position = np.array(self.position, dtype=float).reshape(-1)
        if position.size == 0 or not np.all(np.isfinite(position)):
            raise MalformedInput(f"Anchor '{self.id}' needs a finite, nonempty position")
        if self.eta is not None and not (math.isfinite(self.eta) and self.eta > 0):
            raise MalformedInput(f"Anchor '{self.id}' has nonpositive path loss exponent {self.eta}")
        if self.c0 is not None and not math.isfinite(self.c0):
            raise MalformedInput(f"Anchor '{self.id}' has non-finite c0")
        position.setflags(write=False)
        object.__setattr__(self, "position", position)

    @property
    def has_pathloss(self) -> bool:
        return self.eta is not None and self.c0 is not None

    def to_dict(self) -> dict:
        data = {"id": self.id, "pos": self.position.tolist()}
        if self.eta is not None:
            data["eta"] = self.eta
        if self.c0 is not None:
            data["c0"] = self.c0
        return data


def anchors_from_list(entries: list) -> dict[str, AnchorParams]:
    """Build the registry from ``[{"id", "pos", "eta", "c0"}, ...]``.

    Raises:
        MalformedInput: On missing fields or duplicate ids.
        DimensionMismatch: If anchor positions differ in length.
    """
    if not isinstance(entries, list):
        raise MalformedInput("Anchor registry must be a JSON list")

    registry: dict[str, AnchorParams] = {}
    for entry in entries:
        try:
            anchor = AnchorParams(
                id=str(entry["id"]),
                position=entry["pos"],
                eta=float(entry["eta"]) if entry.get("eta") is not None else None,
                c0=float(entry["c0"]) if entry.get("c0") is not None else None,
            )
        except (KeyError, TypeError, ValueError) as e:
            raise MalformedInput(f"Invalid anchor entry {entry!r}: {e}") from e
        if anchor.id in registry:
            raise MalformedInput(f"Duplicate anchor id '{anchor.id}'")
        registry[anchor.id] = anchor

    dims = {anchor.position.size for anchor in registry.values()}
    if len(dims) > 1:
        raise DimensionMismatch(f"Anchor positions have mixed dimensions {sorted(dims)}")
    return registry


def load_anchors(path: str) -> dict[str, AnchorParams]:
    """Load the anchor registry JSON file."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            entries = json.load(f)
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise MalformedInput(f"Anchor file {path} is not valid JSON: {e}") from e
    registry = anchors_from_list(entries)
    logger.info(f"Loaded {len(registry)} anchors from {path}")
    return registry


def resolve_anchor(anchors: dict[str, AnchorParams], anchor_id: str) -> AnchorParams:
    try:
        return anchors[anchor_id]
    except KeyError:
        raise UnknownAnchor(f"Measurement references unknown anchor '{anchor_id}'") from None
