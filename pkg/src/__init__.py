"""Quenched response toolkit for random expanding circle-map cocycles."""

__version__ = "1.0.0"
__author__ = "Quenched Response Toolkit"
