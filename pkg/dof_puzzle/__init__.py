"""Number-filling puzzle toolkit for interference-alignment Sum-DoF of (M, N)-channels."""

__version__ = "0.1.0"
