"""Arithmetic kernel dispatch.

The compiled extension is used when it was built; otherwise the pure-Python
module is used. Both are importable directly for testing and benchmarking.
"""
from superwp.exactcore import _pykernel

try:
    from superwp.exactcore import _ckernel as _impl

    BACKEND = "cython"
except ImportError:  # extension not built
    _impl = _pykernel
    BACKEND = "python"

sparse_mul = _impl.sparse_mul
sparse_add = _impl.sparse_add
convolve = _impl.convolve

__all__ = ["BACKEND", "sparse_mul", "sparse_add", "convolve"]
