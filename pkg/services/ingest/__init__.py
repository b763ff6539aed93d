"""Measurement loading, path loss calibration and problem assembly."""

from .anchors import AnchorParams, anchors_from_list, load_anchors, resolve_anchor
from .calibration import calibrate_pathloss, load_calibration
from .measurements import (
    MeasurementKind,
    MeasurementRecord,
    build_problem,
    load_measurements,
    synthesize_measurements,
)

__all__ = [
    'AnchorParams',
    'MeasurementKind',
    'MeasurementRecord',
    'anchors_from_list',
    'build_problem',
    'calibrate_pathloss',
    'load_anchors',
    'load_calibration',
    'load_measurements',
    'resolve_anchor',
    'synthesize_measurements',
]
