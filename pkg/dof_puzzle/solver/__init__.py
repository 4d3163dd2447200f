from .branch_and_bound import branch_and_bound
from .brute_force import brute_force
from .local_search import local_search
from .solver import solve

__all__ = ['branch_and_bound', 'brute_force', 'local_search', 'solve']
