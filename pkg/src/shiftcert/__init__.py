"""Exact certification of k-hyponormality and quartic hyponormality for weighted shifts."""

__version__ = "0.1.0"
