"""Toroidal maps: canonical orientations, bijections with mobiles, and exact counting series."""

__version__ = "0.1.0"
