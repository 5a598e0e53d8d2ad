"""Exact pseudo-measure machinery for clique formulas over random k-partite graphs."""

__version__ = "0.1.0"
