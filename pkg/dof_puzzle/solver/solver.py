import logging

from dof_puzzle.constructions import classic_labeling
from dof_puzzle.models import ChannelSpec, SolveConfig, SolveReport

from .branch_and_bound import branch_and_bound
from .brute_force import brute_force
from .local_search import local_search

logger = logging.getLogger(__name__)


def solve(spec: ChannelSpec, config: SolveConfig = SolveConfig()) -> SolveReport:
    """Find a score-maximizing valid precoding index matrix with the configured mode."""
    logger.debug(f"Solving K={spec.K} with {spec.support_size} message cells in {config.mode} mode")
    if config.mode == "brute-force":
        return brute_force(spec, config.max_cells)
    if config.mode == "heuristic":
        return local_search(spec, classic_labeling(spec), config)
    return branch_and_bound(spec, config)
