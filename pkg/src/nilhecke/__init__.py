"""Divided-difference operator calculus on root data over exact coefficient rings."""

__version__ = "0.1.0"
