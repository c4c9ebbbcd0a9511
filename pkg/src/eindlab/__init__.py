"""Exact computations around edge inducibility of small graphs."""

__version__ = "0.1.0"
