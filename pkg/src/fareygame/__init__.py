"""Exact Farey, Schmidt-game, tessellation and dimension-bound toolkit."""

__version__ = "0.1.0"
