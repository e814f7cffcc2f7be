"""Toric ideals of matching polytopes and edge-colouring equivalence of small graphs."""

__version__ = "0.1.0"
