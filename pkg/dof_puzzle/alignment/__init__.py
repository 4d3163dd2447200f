from .alignment import (
    AlignmentInstance,
    AlignmentPlan,
    build_expanded,
    build_precoders,
    build_receiver_space,
    check_containment,
    column_monomials,
    draw_coefficients,
    exponent_collisions,
    interference_sets,
    limit_dof,
    pad_members,
    pad_sets,
    plan_alignment,
    property_one_violations,
    sample_instance,
    verify,
)
from .linalg import bareiss_rank, exact_rank, float_rank, rank_mod_prime

__all__ = [
    'AlignmentInstance', 'AlignmentPlan', 'bareiss_rank', 'build_expanded',
    'build_precoders', 'build_receiver_space', 'check_containment',
    'column_monomials', 'draw_coefficients', 'exact_rank', 'exponent_collisions',
    'float_rank', 'interference_sets', 'limit_dof', 'pad_members', 'pad_sets',
    'plan_alignment', 'property_one_violations', 'rank_mod_prime',
    'sample_instance', 'verify',
]
