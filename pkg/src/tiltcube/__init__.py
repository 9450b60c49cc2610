"""Families of subsets of [n] that avoid tilted Sperner configurations."""

__version__ = "0.1.0"
