"""
Full flags, total positivity, positive triples and quadruples.
"""

from .flag import (
    Check,
    Flag,
    Unipotent,
    sigma0,
    sigma_inf,
    transverse,
    flag_distance,
    nilpotent_exp,
    superdiagonal_matrix,
)
from .principal import principal_image, FLIP
from .positivity import totally_positive, admissible_minors, minor_values, positivity_margin_array
from .triples import (
    PositiveQuadruple,
    normalize_triple,
    flat_basepoint,
    project_pd,
    standard_position,
    cross_ratio_i,
    log_cross_ratio_i,
    quadruple_positive,
    positive_triple_busemann_sum,
    busemann_sum_minimizer,
    properness_profile,
)

__all__ = [
    'Check',
    'principal_image',
    'FLIP',
    'Flag',
    'Unipotent',
    'PositiveQuadruple',
    'sigma0',
    'sigma_inf',
    'transverse',
    'flag_distance',
    'nilpotent_exp',
    'superdiagonal_matrix',
    'totally_positive',
    'admissible_minors',
    'minor_values',
    'positivity_margin_array',
    'normalize_triple',
    'flat_basepoint',
    'project_pd',
    'standard_position',
    'cross_ratio_i',
    'log_cross_ratio_i',
    'quadruple_positive',
    'positive_triple_busemann_sum',
    'busemann_sum_minimizer',
    'properness_profile',
]
