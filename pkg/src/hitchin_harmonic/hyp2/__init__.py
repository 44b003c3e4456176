"""
Hyperbolic plane: points, Möbius maps, ideal triples and Green's functions.
"""

from .plane import (
    INF,
    I_POINT,
    HypPoint,
    Mobius,
    IdealTriple,
    hyp_distance,
    hyp_distance_array,
    cross_ratio,
    foot_point,
    frame_of_triple,
    affine_frame,
    section,
    point_at,
    circle_points,
    circle_array,
    circle_weights,
    disk_samples,
    rotation_about,
    chart_flip,
)
from .green import gamma_integral, green_function, exit_constant, boundary_estimate_bound

__all__ = [
    'INF',
    'I_POINT',
    'HypPoint',
    'Mobius',
    'IdealTriple',
    'hyp_distance',
    'hyp_distance_array',
    'cross_ratio',
    'foot_point',
    'frame_of_triple',
    'affine_frame',
    'section',
    'point_at',
    'circle_points',
    'circle_array',
    'circle_weights',
    'disk_samples',
    'rotation_about',
    'chart_flip',
    'gamma_integral',
    'green_function',
    'exit_constant',
    'boundary_estimate_bound',
]
