"""Selects the exact-arithmetic kernel backend at import time.

The compiled extension is preferred; the pure-Python fallback has the
same behaviour.  Set LFBOUNDS_PURE=1 to force the fallback (used by the
benchmark and by tests that compare the two).
"""

from __future__ import annotations

import os

if os.environ.get("LFBOUNDS_PURE"):
    from lfbounds.lp import _pure as _impl

    KERNEL_BACKEND = "pure (forced)"
else:
    try:
        from lfbounds.lp import _speedups as _impl  # type: ignore[attr-defined]

        KERNEL_BACKEND = "compiled"
    except ImportError:
        from lfbounds.lp import _pure as _impl

        KERNEL_BACKEND = "pure"

pivot_dense = _impl.pivot_dense
axpy_sparse = _impl.axpy_sparse
dot_sparse = _impl.dot_sparse
