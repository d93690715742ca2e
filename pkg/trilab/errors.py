"""Domain errors. The CLI reports any TrilabError with exit code 1."""
from __future__ import annotations


class TrilabError(ValueError):
    pass


class DegenerateTriangleError(TrilabError):
    """Raised when an operation needs a triangle of nonzero volume."""


class NotUnimodularError(TrilabError):
    """Raised for a linear part with determinant other than +1 or -1."""


class WidthOrderError(TrilabError):
    """Raised for width parameters with w1 > w2 or negative entries."""


class EdgeExtensionError(TrilabError):
    """Raised when an edge extension would leave a non-positive edge length."""
