"""Exact block operators of a 4d vertex model over characteristic-2 fields."""

__version__ = "0.1.0"
