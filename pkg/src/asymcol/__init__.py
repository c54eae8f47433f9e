"""Asymmetric 2-colourings of permutation groups, finite and windowed-infinite."""

__version__ = "0.1.0"
