"""Finite checks on the number of lines in matroids with no long-line minor."""

__version__ = "0.1.0"
