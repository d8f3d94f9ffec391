"""Computations in the braid groups of the real projective plane."""

__version__ = "0.1.0"
