"""Exact Stickelberger elements, reduced norms and annihilation verdicts."""

__version__ = "0.1.0"

from .errors import SkvError

__all__ = ["SkvError", "__version__"]
