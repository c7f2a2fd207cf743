"""Backend selection for the hot kernels.

The compiled module ``tstrx._kernels`` is preferred.  Setting the environment
variable ``TSTRX_PURE_PYTHON=1`` forces the numpy fallback.
"""
from __future__ import annotations

import os

from tstrx import _kernels_py

if os.environ.get("TSTRX_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from tstrx import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernels_py

BACKEND = "python" if _impl is _kernels_py else "cython"

rref_mod_p = _impl.rref_mod_p
closed_subsets = _impl.closed_subsets

__all__ = ["BACKEND", "rref_mod_p", "closed_subsets"]
