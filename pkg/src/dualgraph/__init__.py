"""Exact combinatorics of weighted dual trees on rational surfaces."""

__version__ = "0.1.0"
