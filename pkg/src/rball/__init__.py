"""Intersections of congruent balls: construction, measurement and inequality checks."""

__version__ = "0.1.0"
