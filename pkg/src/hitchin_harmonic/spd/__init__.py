"""
The symmetric space Y_d = SL_d(ℝ)/SO(d) in the SPD-matrix model.
"""

from .geometry import (
    KAPPA,
    SpdPoint,
    CartanVector,
    TangentSym,
    vector_distance,
    distance,
    distance_array,
    geodesic,
    exp_map,
    log_map,
    karcher_mean,
    karcher_mean_array,
    sectional_curvature,
    sampled_curvature,
)
from .busemann import (
    IdealPoint,
    busemann,
    busemann_array,
    busemann_truncated,
    slope,
    opposite,
    rho_type,
    ideal_from_flag,
    canonical_qr,
    busemann_factors,
    transform_ideal,
)
from .weyl import separation, weyl_cone_distance, weyl_subgroup, fundamental_coweights
from .inequalities import ptolemy_check, quad_cr_bound_check, parallelogram_check

__all__ = [
    'KAPPA',
    'SpdPoint',
    'CartanVector',
    'TangentSym',
    'IdealPoint',
    'vector_distance',
    'distance',
    'distance_array',
    'geodesic',
    'exp_map',
    'log_map',
    'karcher_mean',
    'karcher_mean_array',
    'sectional_curvature',
    'sampled_curvature',
    'busemann',
    'busemann_array',
    'busemann_truncated',
    'slope',
    'opposite',
    'rho_type',
    'ideal_from_flag',
    'canonical_qr',
    'busemann_factors',
    'transform_ideal',
    'separation',
    'weyl_cone_distance',
    'weyl_subgroup',
    'fundamental_coweights',
    'ptolemy_check',
    'quad_cr_bound_check',
    'parallelogram_check',
]
