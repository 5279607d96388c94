"""Orbit classification on triple flag varieties of split orthogonal groups over F_p."""

__version__ = "0.1.0"
