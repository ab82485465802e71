"""Exact Mordell-Weil lattices of rational elliptic surfaces."""

__version__ = "0.1.0"
