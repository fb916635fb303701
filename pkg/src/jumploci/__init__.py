"""Exact interpolation determinants of plane point configurations and their jumping-line loci."""

__version__ = "0.1.0"
