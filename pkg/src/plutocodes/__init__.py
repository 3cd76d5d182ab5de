"""Parity-checked fast matrix multiplication codes."""

__version__ = "0.1.0"
