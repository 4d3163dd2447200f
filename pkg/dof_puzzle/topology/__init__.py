from .topology import (
    enumerate_specs,
    mod1,
    parse_index_matrix,
    parse_spec,
    serialize_index_matrix,
    serialize_spec,
    symmetric_spec,
)

__all__ = [
    'enumerate_specs', 'mod1', 'parse_index_matrix', 'parse_spec',
    'serialize_index_matrix', 'serialize_spec', 'symmetric_spec',
]
