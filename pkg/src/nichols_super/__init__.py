"""Nichols algebras of diagonal type and their super root systems."""

__version__ = "0.1.0"
