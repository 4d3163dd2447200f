from .constructions import (
    CSV_FIELDS,
    DominanceRow,
    SymmetricFamily,
    classic_G,
    classic_interference_count,
    classic_labeling,
    classic_score,
    corollary_G,
    corollary_score,
    dominance_check,
    partial_x_bound,
    write_dominance_csv,
    x_channel_bound,
)

__all__ = [
    'CSV_FIELDS', 'DominanceRow', 'SymmetricFamily', 'classic_G',
    'classic_interference_count', 'classic_labeling', 'classic_score',
    'corollary_G', 'corollary_score', 'dominance_check', 'partial_x_bound',
    'write_dominance_csv', 'x_channel_bound',
]
