"""
Stability certificates from circle averages of Busemann functions.
"""

from .eta import EtaSampler, lattice_types, wall_types, structured_frames
from .certificates import (
    CircleData,
    StabilityReport,
    stability_integral,
    busemann_circle_average,
    sample_centres,
    certify,
    drift_proxy,
    perturbation_bound,
    iterated_average,
)

__all__ = [
    'EtaSampler',
    'lattice_types',
    'wall_types',
    'structured_frames',
    'CircleData',
    'StabilityReport',
    'stability_integral',
    'busemann_circle_average',
    'sample_centres',
    'certify',
    'drift_proxy',
    'perturbation_bound',
    'iterated_average',
]
