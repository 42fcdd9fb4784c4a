"""Garside structure and word problem for the braid group of G(e,e,r)."""

__version__ = "0.1.0"
