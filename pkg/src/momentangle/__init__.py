"""Integral cohomology and Massey products of moment-angle manifolds of simple 3-polytopes."""

__version__ = "0.1.0"
