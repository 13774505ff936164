"""Exact-arithmetic toolkit for convexity and sumset experiments."""

__version__ = "0.1.0"
