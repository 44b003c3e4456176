"""
Positive curves built from monotone piecewise-linear data.
"""

from .homeo import PiecewiseMonotone, CURVE_SCHEMA, load_curve_spec, write_curve_spec, random_homeomorphism
from .curve import PositiveCurve, build_curve, veronese_curve, unipotent_at, DEFAULT_WINDOW
from .quasisymmetry import QsGrid, qs_constant, curve_qs_constant, symmetric_quadruples
from .transversality import NontransverseReport, count_nontransverse
from .sampling import positivity_sweep, limit_family, limit_convergence

__all__ = [
    'PiecewiseMonotone',
    'CURVE_SCHEMA',
    'load_curve_spec',
    'write_curve_spec',
    'random_homeomorphism',
    'PositiveCurve',
    'build_curve',
    'veronese_curve',
    'unipotent_at',
    'DEFAULT_WINDOW',
    'QsGrid',
    'qs_constant',
    'curve_qs_constant',
    'symmetric_quadruples',
    'NontransverseReport',
    'count_nontransverse',
    'positivity_sweep',
    'limit_family',
    'limit_convergence',
]
