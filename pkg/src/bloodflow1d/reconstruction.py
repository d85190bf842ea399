"""Component-wise third-order WENO reconstruction (classical two-stencil form).

Linear weights are (1/3, 2/3) at the right face and (2/3, 1/3) at the left
face; smoothness indicators are the squared one-sided differences.  The
nonlinear weights are w_k ~ d_k / (eps + beta_k)^2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ParameterError

DEFAULT_EPS = 1e-6   # smooth runs
RP_EPS = 1e-14       # Riemann problems (sharper weights at discontinuities)


@dataclass(frozen=True)
class FacePair:
    minus: float  # value at the left face of the cell (inner-side trace)
    plus: float   # value at the right face of the cell


def weno3(qm: float, q0: float, qp: float, eps: float = DEFAULT_EPS) -> FacePair:
    """Faces of the middle cell from the three-cell stencil (qm, q0, qp)."""
    if not eps > 0:
        raise ParameterError("eps must be positive")
    q = np.array([qm, q0, qp], dtype=float)
    if not np.all(np.isfinite(q)):
        raise ParameterError("non-finite reconstruction input")
    fm = np.empty(3)
    fp = np.empty(3)
    kernels.weno3_faces(q, eps, fm, fp)
    return FacePair(minus=float(fm[1]), plus=float(fp[1]))


def reconstruct(q: np.ndarray, eps: float = DEFAULT_EPS):
    """Face arrays (minus, plus) for every cell of a ghost-padded array."""
    q = np.ascontiguousarray(q, dtype=float)
    qm = np.empty_like(q)
    qp = np.empty_like(q)
    kernels.weno3_faces(q, eps, qm, qp)
    return qm, qp


RECONSTRUCTED_FIELDS = ("A", "Au", "p", "A0", "E0", "E_inf", "eta", "p0")


def reconstruct_field(fields, eps: float = DEFAULT_EPS) -> dict:
    """WENO faces of all state and parameter components of a FieldSet.

    Requires filled (finite) ghost cells.  Returns a mapping name -> (minus,
    plus) face arrays.
    """
    ng = fields.grid.n_ghost
    out = {}
    for name in RECONSTRUCTED_FIELDS:
        arr = getattr(fields, name)
        ghosts = np.concatenate([arr[:ng], arr[-ng:]])
        if not np.all(np.isfinite(ghosts)):
            raise ParameterError(f"unfilled ghost cells in field {name}")
        out[name] = reconstruct(arr, eps)
    return out
