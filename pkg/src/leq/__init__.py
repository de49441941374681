"""Lattice equable quadrilaterals: classification, construction and search."""

__version__ = "0.1.0"
