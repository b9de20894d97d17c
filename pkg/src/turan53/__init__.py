"""Turán (n,5,3)-systems from graphs without induced 5-cycles."""

__version__ = "0.1.0"
