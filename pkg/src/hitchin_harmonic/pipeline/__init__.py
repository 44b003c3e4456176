"""
Runners behind the CLI command groups.
"""

from . import run_geometry, run_curve, run_embed, run_harmonic, run_stability
from .inputs import load_maps, load_curve, load_embedding
from .run_geometry import GeometrySelfTest

__all__ = [
    'run_geometry',
    'run_curve',
    'run_embed',
    'run_harmonic',
    'run_stability',
    'load_maps',
    'load_curve',
    'load_embedding',
    'GeometrySelfTest',
]
