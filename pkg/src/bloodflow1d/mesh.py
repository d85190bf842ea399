"""Uniform 1D grid, cell-averaged fields and initial-condition builders."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .constitutive import VesselKind, WallModel, elastic_pressure, transport_coeff
from .errors import DomainError, ParameterError

N_GHOST = 2  # WENO3 stencil width per side


@dataclass(frozen=True)
class Grid1D:
    L: float
    Nx: int
    n_ghost: int = N_GHOST

    def __post_init__(self):
        if self.L <= 0:
            raise ParameterError("domain length must be positive")
        if self.Nx < 3:
            raise ParameterError("need at least 3 cells")

    @property
    def dx(self) -> float:
        return self.L / self.Nx

    @property
    def ntot(self) -> int:
        return self.Nx + 2 * self.n_ghost

    @property
    def interior(self) -> slice:
        return slice(self.n_ghost, self.n_ghost + self.Nx)

    def centers(self) -> np.ndarray:
        """Interior cell centers, x_i = (i + 1/2) dx."""
        return (np.arange(self.Nx) + 0.5) * self.dx

    def centers_full(self) -> np.ndarray:
        """Cell centers including ghost cells (extends beyond [0, L])."""
        return (np.arange(-self.n_ghost, self.Nx + self.n_ghost) + 0.5) * self.dx


_STATE_NAMES = ("A", "Au", "p")
_PARAM_NAMES = ("A0", "E0", "E_inf", "eta", "p0", "tau_r")


class FieldSet:
    """Cell-averaged state (A, Au, p) plus frozen per-cell wall parameters.

    All arrays are full length (Nx + 2 n_ghost, SI units).  Parameter arrays
    are read-only after construction: the augmented system evolves them with
    zero time derivative, so any in-place mutation is a contract violation.
    """

    def __init__(self, grid: Grid1D, kind: VesselKind, h0: float, rho: float,
                 state: dict, params: dict, periodic: bool = False):
        self.grid = grid
        self.kind = kind
        self.h0 = float(h0)
        self.rho = float(rho)
        self.periodic = bool(periodic)
        ntot = grid.ntot
        for name in _STATE_NAMES:
            arr = np.asarray(state[name], dtype=float)
            if arr.shape != (ntot,):
                raise ParameterError(f"state field {name} has shape {arr.shape}, "
                                     f"expected ({ntot},)")
            setattr(self, name, arr.copy())
        for name in _PARAM_NAMES:
            arr = np.asarray(params[name], dtype=float)
            if arr.shape != (ntot,):
                raise ParameterError(f"parameter field {name} has shape "
                                     f"{arr.shape}, expected ({ntot},)")
            arr = arr.copy()
            arr.flags.writeable = False
            setattr(self, name, arr)
        if np.any(self.A <= 0) or np.any(self.A0 <= 0):
            raise DomainError("areas must be positive everywhere")

    @property
    def u(self) -> np.ndarray:
        return self.Au / self.A

    @property
    def alpha(self) -> np.ndarray:
        return self.A / self.A0

    def interior(self, name: str) -> np.ndarray:
        return getattr(self, name)[self.grid.interior]

    def wall_model_at(self, i: int) -> WallModel:
        """Wall model of one cell (validation-free construction path)."""
        return WallModel(A0=self.A0[i], h0=self.h0, E0=self.E0[i],
                         E_inf=self.E_inf[i], eta=self.eta[i],
                         tau_r=self.tau_r[i], p0=self.p0[i], kind=self.kind,
                         sls_tol=math.inf)

    def copy(self) -> "FieldSet":
        return FieldSet(self.grid, self.kind, self.h0, self.rho,
                        {k: getattr(self, k) for k in _STATE_NAMES},
                        {k: getattr(self, k) for k in _PARAM_NAMES},
                        periodic=self.periodic)


def _fill_ghosts_init(arr: np.ndarray, ng: int, periodic: bool):
    if periodic:
        arr[:ng] = arr[-2 * ng:-ng]
        arr[-ng:] = arr[ng:2 * ng]
    else:
        arr[:ng] = arr[ng]
        arr[-ng:] = arr[-ng - 1]


@dataclass(frozen=True)
class RegionSpec:
    """One side of a piecewise-constant initial condition (SI units).

    ``p = None`` evaluates the initial pressure from the elastic tube law,
    which is what keeps an at-rest state exactly on the equilibrium manifold
    (printed table pressures only match the law to their rounding).
    """

    A0: float
    E0: float
    E_inf: float
    eta: float
    p0: float
    A: float
    u: float
    p: float | None = None
    tau_r: float = 0.0


def _region_pressure(spec: RegionSpec, kind: VesselKind, h0: float) -> float:
    if spec.p is not None:
        return spec.p
    w = WallModel(A0=spec.A0, h0=h0, E0=spec.E0, E_inf=spec.E_inf, eta=spec.eta,
                  tau_r=spec.tau_r, p0=spec.p0, kind=kind, sls_tol=math.inf)
    return elastic_pressure(spec.A, w)


def init_from_piecewise(left: RegionSpec, right: RegionSpec, x0: float,
                        grid: Grid1D, kind: VesselKind, h0: float,
                        rho: float) -> FieldSet:
    """Riemann-problem initial data: left values where center <= x0.

    The jump is never averaged onto a cell; ties at a cell center take the
    left state.
    """
    if not (0.0 < x0 < grid.L):
        raise ParameterError(f"split position {x0} outside domain (0, {grid.L})")
    xc = grid.centers_full()
    take_left = xc <= x0
    pl = _region_pressure(left, kind, h0)
    pr = _region_pressure(right, kind, h0)

    def pick(a, b):
        return np.where(take_left, a, b)

    state = {
        "A": pick(left.A, right.A),
        "Au": pick(left.A * left.u, right.A * right.u),
        "p": pick(pl, pr),
    }
    params = {
        "A0": pick(left.A0, right.A0),
        "E0": pick(left.E0, right.E0),
        "E_inf": pick(left.E_inf, right.E_inf),
        "eta": pick(left.eta, right.eta),
        "p0": pick(left.p0, right.p0),
        "tau_r": pick(left.tau_r, right.tau_r),
    }
    return FieldSet(grid, kind, h0, rho, state, params, periodic=False)


@dataclass(frozen=True)
class SmoothSpec:
    """Smooth periodic initial condition: sinusoidal equilibrium fields.

    A0 = A_mean + A_amp sin(2 pi x / L), p0 and the two moduli likewise
    (both moduli share E_amp); A(x,0) = A0(x,0), Au(x,0) constant, and the
    initial pressure follows the elastic law (hence equals p0 here).
    """

    A_mean: float
    A_amp: float
    p0_mean: float
    p0_amp: float
    E0_mean: float
    E_inf_mean: float
    E_amp: float
    Au0: float
    eta: float
    tau_r: float


def init_smooth_periodic(spec: SmoothSpec, grid: Grid1D, kind: VesselKind,
                         h0: float, rho: float) -> FieldSet:
    x = grid.centers_full()
    s = np.sin(2.0 * math.pi * x / grid.L)
    A0 = spec.A_mean + spec.A_amp * s
    p0 = spec.p0_mean + spec.p0_amp * s
    E0 = spec.E0_mean + spec.E_amp * s
    E_inf = spec.E_inf_mean + spec.E_amp * s
    state = {
        "A": A0.copy(),
        "Au": np.full_like(A0, spec.Au0),
        "p": p0.copy(),  # elastic law at alpha = 1
    }
    params = {
        "A0": A0,
        "E0": E0,
        "E_inf": E_inf,
        "eta": np.full_like(A0, spec.eta),
        "p0": p0,
        "tau_r": np.full_like(A0, spec.tau_r),
    }
    return FieldSet(grid, kind, h0, rho, state, params, periodic=True)


def make_well_prepared(fields: FieldSet) -> FieldSet:
    """Project the initial pressure onto the local equilibrium manifold.

    Overwrites p with F(A) - tau_r E0 G(A) d(Au)/dx using a central
    difference (any consistent gradient is admissible at this order).
    """
    out = fields.copy()
    ng = out.grid.n_ghost
    _fill_ghosts_init(out.Au, ng, out.periodic)
    dAu = np.zeros_like(out.Au)
    dAu[1:-1] = (out.Au[2:] - out.Au[:-2]) / (2.0 * out.grid.dx)
    _fill_ghosts_init(dAu, ng, out.periodic)
    F = np.empty_like(out.p)
    G = np.empty_like(out.p)
    for i in range(out.grid.ntot):
        w = out.wall_model_at(i)
        F[i] = elastic_pressure(out.A[i], w)
        G[i] = transport_coeff(out.A[i], w)
    out.p[:] = F - out.tau_r * out.E0 * G * dAu
    return out
