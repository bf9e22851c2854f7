"""Skeletons, weighted double skeletons and reconstruction of finite lattices."""

__version__ = "0.1.0"
