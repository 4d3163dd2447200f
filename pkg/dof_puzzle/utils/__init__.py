from .utils import format_score, read_text, render_matrix, render_table, write_text

__all__ = [
    'format_score', 'read_text', 'render_matrix', 'render_table', 'write_text',
]
