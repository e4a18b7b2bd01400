"""Asymptotic digit averages of real numbers given as base-b digit streams."""

__version__ = "0.1.0"
