"""Exact-arithmetic toolkit for k-plane l-simple topological drawings."""

__version__ = "0.1.0"
