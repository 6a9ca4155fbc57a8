"""Kernel selection.

The compiled extension is used when importable; set ``GNNSHATTER_PURE_PYTHON=1``
to force the fallback.
"""
from __future__ import annotations

import os

from . import _pykernels

IMPLEMENTATIONS = {"python": _pykernels}

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None
else:
    IMPLEMENTATIONS["cython"] = _ckernels

if _ckernels is not None and not os.environ.get("GNNSHATTER_PURE_PYTHON"):
    BACKEND = "cython"
else:
    BACKEND = "python"

_impl = IMPLEMENTATIONS[BACKEND]
csr_sum_f64 = _impl.csr_sum_f64
csr_sum_i64 = _impl.csr_sum_i64
refine = _impl.refine
