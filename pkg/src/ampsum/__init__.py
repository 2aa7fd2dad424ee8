"""Numerical verification toolkit for amplified sums of twisted Kloosterman sums."""

__version__ = "0.1.0"
