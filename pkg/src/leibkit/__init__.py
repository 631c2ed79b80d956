"""Exact decision procedures for finite-dimensional Leibniz algebras."""

__version__ = "0.1.0"
