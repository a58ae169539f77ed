"""Kernel selection: the compiled extension when importable, NumPy otherwise.

Set ``QUTRIT_TOFFOLI_PURE=1`` to force the NumPy fallback.
"""
import os

from . import _fallback

fallback = _fallback

if os.environ.get("QUTRIT_TOFFOLI_PURE"):
    compiled = None
else:
    try:
        from . import _kernels as compiled
    except ImportError:  # extension not built
        compiled = None

kernels = compiled if compiled is not None else fallback
NAME = "cython" if compiled is not None else "numpy"
