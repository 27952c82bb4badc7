"""Cohomogeneity one actions on rank-one noncompact symmetric spaces, numerically."""

__version__ = "0.1.0"
