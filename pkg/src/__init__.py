"""Quaternionic double-delta Dirac scattering (Python + NumPy)."""

__version__ = "0.1.0"
