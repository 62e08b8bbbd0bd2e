"""Exact symbolic engine for affine Ricci solitons on three-dimensional
Lorentzian Lie groups with a product structure."""

__version__ = "0.1.0"
