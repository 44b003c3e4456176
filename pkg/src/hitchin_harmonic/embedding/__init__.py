"""
Embeddings ℍ² → Y_d and their sampled quasi-isometry diagnostics.
"""

from .embedding import (
    Embedding,
    CurveEmbedding,
    IdentityEmbedding,
    ProductEmbedding,
    ConstantEmbedding,
    TransformedEmbedding,
    identity_embedding,
    veronese_embedding,
    product_embedding,
    build_embedding,
    log_singular_values,
)
from .constants import (
    sample_pairs,
    estimate_constants,
    pair_table,
    coarse_lipschitz_certificate,
    morse_defect,
    section_sup_distance,
    section_growth,
    embedding_dump,
)

__all__ = [
    'Embedding',
    'CurveEmbedding',
    'IdentityEmbedding',
    'ProductEmbedding',
    'ConstantEmbedding',
    'TransformedEmbedding',
    'identity_embedding',
    'veronese_embedding',
    'product_embedding',
    'build_embedding',
    'log_singular_values',
    'sample_pairs',
    'estimate_constants',
    'pair_table',
    'coarse_lipschitz_certificate',
    'morse_defect',
    'section_sup_distance',
    'section_growth',
    'embedding_dump',
]
