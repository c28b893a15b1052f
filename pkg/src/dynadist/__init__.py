"""Polynomial dynamics over prime fields: dynatomic polynomials, functional graphs,
wreath-product fixed-point statistics and prime-density sweeps."""

__version__ = "0.1.0"
