"""Exact super Weil-Petersson volumes, recursion kernels and Virasoro-constrained tau functions."""
__version__ = "0.1.0"
