"""Finite-rank verification of direct limits of nilpotent Gelfand pairs."""

__version__ = "0.1.0"
