"""Backend selection for the integer polynomial kernels.

The compiled module is used when it imports; set QLW_PURE_PYTHON=1 to force
the pure-Python one.
"""
import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels
if os.environ.get("QLW_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

mul = _impl.mul
divexact = _impl.divexact
evalint = _impl.evalint
