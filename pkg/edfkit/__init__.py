"""Weighted external difference families and weak AMD codes."""
__version__ = "1.0.0"
