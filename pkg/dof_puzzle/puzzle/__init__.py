from .puzzle import (
    Violation,
    canonical_relabel,
    interference_count,
    is_valid,
    row_breakdown,
    score,
    submatrix,
    validate,
)

__all__ = [
    'Violation', 'canonical_relabel', 'interference_count', 'is_valid',
    'row_breakdown', 'score', 'submatrix', 'validate',
]
