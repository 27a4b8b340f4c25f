"""Degenerate principal series of U_q sl_2n on localized quantum matrices."""

__version__ = "0.1.0"
