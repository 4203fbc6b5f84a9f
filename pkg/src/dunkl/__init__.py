"""Trigonometric Dunkl operators, Jacobi polynomials and hypergeometric functions
for root systems."""

__version__ = "0.1.0"
