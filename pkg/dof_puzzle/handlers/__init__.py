from .construct import construct_command
from .error import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, error_handler
from .score import score_command
from .solve import solve_command
from .sweep import sweep_command
from .verify import verify_command

__all__ = [
    'EXIT_FAILURE', 'EXIT_OK', 'EXIT_USAGE', 'construct_command', 'error_handler',
    'score_command', 'solve_command', 'sweep_command', 'verify_command',
]
