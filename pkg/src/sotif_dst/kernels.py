"""Backend selection for the evidence kernels.

The compiled extension is used when it was built; otherwise, or when
``SOTIF_DST_PURE_PYTHON`` is set to a non-empty value, the pure-Python
kernels are used. Both return bit-identical results.
"""

from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("SOTIF_DST_PURE_PYTHON"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"
    else:
        BACKEND = "cython"

conjunctive = _impl.conjunctive
conflict = _impl.conflict
belief = _impl.belief
plausibility = _impl.plausibility

__all__ = ["BACKEND", "conjunctive", "conflict", "belief", "plausibility"]
