"""Combinatorics of labelled intersection graphs arising in Dehn surgery."""

__version__ = "0.1.0"
