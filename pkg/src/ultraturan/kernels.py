"""Kernel selection: the compiled extension when it was built, NumPy otherwise.

Set ``ULTRATURAN_PURE_PYTHON=1`` to force the fallback (used by the
benchmark and the kernel-agreement tests).
"""
import os

from . import _kernels_py

BACKEND = "python"
ultra_table = _kernels_py.ultra_table

if not os.environ.get("ULTRATURAN_PURE_PYTHON"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None
    else:
        ultra_table = _compiled.ultra_table
        BACKEND = "cython"
else:
    _compiled = None


def compiled_available():
    return _compiled is not None


__all__ = ["BACKEND", "ultra_table", "compiled_available"]
