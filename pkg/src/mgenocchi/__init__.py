"""Exact and p-adic computations for multiple generalized Genocchi numbers."""

from .errors import DomainError, GenocchiError, UsageError

__version__ = "0.1.0"

__all__ = ["DomainError", "GenocchiError", "UsageError", "__version__"]
