"""Backend selection for the finite-field kernels.

The compiled extension is used when it imported cleanly; otherwise the
pure-Python implementation takes over.  Set SPANFACTOR_PURE=1 to force the
fallback (useful for benchmarking and testing both paths).
"""

import os

from . import _kernels_py

if os.environ.get("SPANFACTOR_PURE"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels_cy as _impl  # type: ignore[attr-defined]
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

mat_mul_mod = _impl.mat_mul_mod
product_pairs_mod = _impl.product_pairs_mod
closure_mod = _impl.closure_mod
rank_mod = _impl.rank_mod
