"""Refined Chabauty-Kim finiteness criteria and S-integral point bounds."""

__version__ = "0.1.0"
