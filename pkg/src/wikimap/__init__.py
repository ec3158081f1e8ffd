"""Semantic maps of the Wikipedia category system built from database dumps."""

__version__ = "0.1.0"
