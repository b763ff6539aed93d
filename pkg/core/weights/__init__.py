"""Noise models, weight construction and the exact normalized cost."""

from .noise import (
    CustomPsi,
    GaussianDistance,
    LogNormalRss,
    NoiseModel,
    Unit,
    build_weight_matrix,
    eval_h0,
    noise_model_from_dict,
    rss_to_distance_squared,
    weights_rss,
    weights_toa,
)

__all__ = [
    'CustomPsi',
    'GaussianDistance',
    'LogNormalRss',
    'NoiseModel',
    'Unit',
    'build_weight_matrix',
    'eval_h0',
    'noise_model_from_dict',
    'rss_to_distance_squared',
    'weights_rss',
    'weights_toa',
]
