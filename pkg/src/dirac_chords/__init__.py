"""Contraction of Dirac gamma-matrix products through chord diagrams."""
__version__ = "0.1.0"
