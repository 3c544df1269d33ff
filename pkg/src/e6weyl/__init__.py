"""Exact constructions of e6, its fine gradings with infinite universal group, and their Weyl groups."""

__version__ = "0.1.0"
