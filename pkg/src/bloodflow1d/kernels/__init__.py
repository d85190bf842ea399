"""Backend dispatch for the hot kernels.

Set ``BLOODFLOW1D_BACKEND=numpy`` to force the pure-numpy implementations
(e.g. on platforms without a working numba); default is the numba backend,
with a silent fallback to numpy if numba is unavailable.
"""

import os
import warnings

_requested = os.environ.get("BLOODFLOW1D_BACKEND", "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    raise ValueError(
        f"BLOODFLOW1D_BACKEND must be 'numba' or 'numpy', got {_requested!r}"
    )

if _requested == "numba":
    try:
        from ._numba import row3_ops, rows12_ops, weno3_faces
        BACKEND = "numba"
    except ImportError:  # pragma: no cover
        warnings.warn("numba unavailable; falling back to the numpy backend")
        from ._numpy import row3_ops, rows12_ops, weno3_faces
        BACKEND = "numpy"
else:
    from ._numpy import row3_ops, rows12_ops, weno3_faces
    BACKEND = "numpy"

__all__ = ["row3_ops", "rows12_ops", "weno3_faces", "BACKEND"]
