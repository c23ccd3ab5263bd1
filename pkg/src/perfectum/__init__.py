"""Exact-arithmetic tools for the classification of perfect quantum codes."""

__version__ = "0.1.0"
