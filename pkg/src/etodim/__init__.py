"""Entropy-weight TODIM with expanded evaluation matrices."""

__version__ = "0.1.0"
