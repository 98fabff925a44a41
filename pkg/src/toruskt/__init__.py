"""Exact K-theory of torus crossed products by unipotent integer matrices."""

__version__ = "0.1.0"
