"""Optical inter-satellite link analysis for LEO constellations."""

__version__ = "0.1.0"
