"""Path-conservative Dumbser-Osher-Toro fluctuations for one interface.

The path is the straight segment in the extended vector (A, Au, p, A0, E0,
E_inf, p0); the parameter components have zero time derivative and zero flux,
so they influence the fluctuation only through the path dependence of the
3x3 system matrix.  |A| = R |Lambda| R^-1 is assembled from the closed-form
eigenstructure at Gauss-Legendre nodes along the path.

This is the reference (per-interface, pure numpy) implementation; the batch
kernels in :mod:`.kernels` repeat the same arithmetic over whole arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constitutive import VesselKind, quasilinear_matrix  # noqa: F401 (re-export)
from .errors import ConvergenceError, ParameterError

_EIG_FLOOR = 1e-12


@dataclass(frozen=True)
class InterfaceState:
    """One side of an interface: reconstructed state plus wall parameters."""

    A: float
    Au: float
    p: float
    A0: float
    E0: float
    E_inf: float = 0.0
    p0: float = 0.0


@dataclass(frozen=True)
class Fluctuations:
    """Left-going (D_minus, applied to the cell left of the interface) and
    right-going (D_plus, cell to the right) shares of the interface jump.

    Path consistency: D_minus + D_plus equals the Gauss approximation of the
    path integral of the system matrix times (Q_R - Q_L).
    """

    D_minus: np.ndarray
    D_plus: np.ndarray


def _gauss01(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w


def dot_fluctuations(qL: InterfaceState, qR: InterfaceState, rho: float,
                     kind: VesselKind, h0: float, n_nodes: int = 3,
                     speed_cap: float = np.inf) -> Fluctuations:
    if qL.A <= 0 or qR.A <= 0:
        raise ParameterError("face areas must be positive")
    m, n = kind.m, kind.n
    dQ = np.array([qR.A - qL.A, qR.Au - qL.Au, qR.p - qL.p])
    cen = np.zeros(3)
    dis = np.zeros(3)
    nodes, weights = _gauss01(n_nodes)
    for s, wg in zip(nodes, weights):
        a = qL.A + s * dQ[0]
        au = qL.Au + s * dQ[1]
        a0 = qL.A0 + s * (qR.A0 - qL.A0)
        e0 = qL.E0 + s * (qR.E0 - qL.E0)
        u = au / a
        alpha = a / a0
        wall = kind.wall_coefficient(a0, h0)
        kap = e0 * (m * alpha**m - n * alpha**n) / (wall * a)
        c = np.sqrt(a * kap / rho)
        k = rho * u * u / a
        cen[0] += wg * dQ[1]
        cen[1] += wg * (-u * u * dQ[0] + 2.0 * u * dQ[1] + (a / rho) * dQ[2])
        cen[2] += wg * (kap * dQ[1])
        det = 2.0 * c * (kap - k)
        if abs(det) <= 1e-14 * max(abs(kap), abs(k)) * max(c, 1e-30):
            raise ConvergenceError(
                f"singular eigenvector matrix at path node s={s:.6f} "
                f"(u={u:.6e}, c={c:.6e})")
        lam1 = abs(u - c)
        lam3 = abs(u + c)
        floor = _EIG_FLOOR * max(lam1, lam3)
        lam1 = min(max(lam1, floor), speed_cap)
        lam3 = min(max(lam3, floor), speed_cap)
        l1 = (-k * (u + c) * dQ[0] - (kap - k) * dQ[1] + (u + c) * dQ[2]) / det
        l3 = (k * (u - c) * dQ[0] + (kap - k) * dQ[1] + (c - u) * dQ[2]) / det
        dis += wg * (lam1 * l1 * np.array([1.0, u - c, kap])
                     + lam3 * l3 * np.array([1.0, u + c, kap]))
    return Fluctuations(D_minus=0.5 * (cen - dis), D_plus=0.5 * (cen + dis))


def path_matrix_average(qL: InterfaceState, qR: InterfaceState, rho: float,
                        kind: VesselKind, h0: float,
                        n_nodes: int = 3) -> np.ndarray:
    """Gauss approximation of the path-averaged 3x3 system matrix."""
    m, n = kind.m, kind.n
    acc = np.zeros((3, 3))
    nodes, weights = _gauss01(n_nodes)
    for s, wg in zip(nodes, weights):
        a = qL.A + s * (qR.A - qL.A)
        au = qL.Au + s * (qR.Au - qL.Au)
        a0 = qL.A0 + s * (qR.A0 - qL.A0)
        e0 = qL.E0 + s * (qR.E0 - qL.E0)
        u = au / a
        alpha = a / a0
        wall = kind.wall_coefficient(a0, h0)
        kap = e0 * (m * alpha**m - n * alpha**n) / (wall * a)
        acc += wg * np.array([
            [0.0, 1.0, 0.0],
            [-u * u, 2.0 * u, a / rho],
            [0.0, kap, 0.0],
        ])
    return acc
