"""Fractional Fourier Littlewood-Paley calculus on sampled signals."""

__version__ = "0.1.0"
