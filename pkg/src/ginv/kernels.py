"""Kernel selection for exact Gaussian-integer arithmetic.

The compiled ``_ckernels`` extension is used when it imports; set
``GINV_PURE_PYTHON=1`` to force the pure-Python implementation. The
compiled path works in int64 and hands any overflowing call to the
pure-Python kernels, so results never depend on which path ran.
"""

import os

from . import _pykernels

try:
    if os.environ.get("GINV_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python kernels forced")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "compiled" if _ckernels is not None else "python"


def gi_matmul(ar, ai, br, bi):
    if _ckernels is not None:
        try:
            return _ckernels.gi_matmul(ar, ai, br, bi)
        except OverflowError:
            pass
    return _pykernels.gi_matmul(ar, ai, br, bi)


def gi_gauss_jordan(re, im):
    if _ckernels is not None:
        try:
            return _ckernels.gi_gauss_jordan(re, im)
        except OverflowError:
            pass
    return _pykernels.gi_gauss_jordan(re, im)
