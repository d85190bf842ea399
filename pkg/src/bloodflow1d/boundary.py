"""Ghost-cell filling and physical inlet/outlet boundary conditions.

The inlet prescribes a flow-rate waveform and matches the interior through
the acoustic invariant (u minus the integral of c/A) and the contact-field
invariant; the outlet couples the vessel to a three-element Windkessel
(R1 in series with R2 || C) whose capacitor pressure advances explicitly.
Both solves assume the boundary shares the adjacent cell's wall parameters
and use Newton iteration on the boundary area.  All formulas are
scale-invariant: they accept SI or solver (dimensionless) quantities alike.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .constitutive import (VesselKind, WallModel, invariant_integral,
                           strain)
from .errors import ConvergenceError, ParameterError

NEWTON_TOL = 1e-12
NEWTON_MAXIT = 100


class BoundaryMode(enum.Enum):
    PERIODIC = "periodic"
    TRANSMISSIVE = "transmissive"
    PHYSICAL = "physical"


@dataclass
class RcrCircuit:
    """Three-element Windkessel with mutable capacitor state.

    Owned by a single simulation; not safe to share across runs.
    """

    R1: float
    R2: float
    C: float
    p_out: float = 0.0
    p_C: float = 0.0

    def __post_init__(self):
        if min(self.R1, self.R2, self.C) <= 0:
            raise ParameterError("R1, R2 and C must be positive")
        if not math.isfinite(self.p_C):
            raise ParameterError("capacitor pressure must be finite")

    def scaled(self, pressure_scale: float, flow_scale: float,
               time_scale: float) -> "RcrCircuit":
        """Dimensionless copy: resistances in pressure/flow, C in flow*time/pressure."""
        r = pressure_scale / flow_scale
        return RcrCircuit(R1=self.R1 / r, R2=self.R2 / r,
                          C=self.C * pressure_scale / (flow_scale * time_scale),
                          p_out=self.p_out / pressure_scale,
                          p_C=self.p_C / pressure_scale)


class InletWaveform:
    """Periodic inlet flow-rate waveform q(t).

    Either a parametric half-sine systole (q_max, t_systole, period) or a
    sampled table with linear interpolation and periodic extension.
    """

    def __init__(self, period: float, q_max: float | None = None,
                 t_systole: float | None = None,
                 table: tuple[np.ndarray, np.ndarray] | None = None):
        if period <= 0:
            raise ParameterError("waveform period must be positive")
        self.period = float(period)
        self._table = None
        if table is not None:
            t, q = (np.asarray(a, dtype=float) for a in table)
            if t.ndim != 1 or t.shape != q.shape or t.size < 2:
                raise ParameterError("waveform table needs two equal 1D columns")
            if np.any(np.diff(t) <= 0):
                raise ParameterError("waveform table times must increase")
            if not np.all(np.isfinite(q)):
                raise ParameterError("waveform flow values must be finite")
            self._table = (t, q)
        else:
            if q_max is None or t_systole is None:
                raise ParameterError("need q_max and t_systole (or a table)")
            if not 0 < t_systole <= period:
                raise ParameterError("need 0 < t_systole <= period")
            self.q_max = float(q_max)
            self.t_systole = float(t_systole)

    @classmethod
    def from_file(cls, path, period: float | None = None) -> "InletWaveform":
        """Two-column numeric text file: t [s], q [m^3/s]; monotone t."""
        data = np.loadtxt(path, dtype=float)
        if data.ndim != 2 or data.shape[1] != 2:
            raise ParameterError("waveform file must have two columns (t, q)")
        t, q = data[:, 0], data[:, 1]
        if period is None:
            period = t[-1] - t[0]
        return cls(period=period, table=(t - t[0], q))

    def scaled(self, flow_scale: float, time_scale: float) -> "InletWaveform":
        if self._table is not None:
            t, q = self._table
            return InletWaveform(self.period / time_scale,
                                 table=(t / time_scale, q / flow_scale))
        return InletWaveform(self.period / time_scale,
                             q_max=self.q_max / flow_scale,
                             t_systole=self.t_systole / time_scale)

    def __call__(self, t: float) -> float:
        tau = math.fmod(t, self.period)
        if tau < 0:
            tau += self.period
        if self._table is not None:
            tt, qq = self._table
            return float(np.interp(tau, tt, qq, period=self.period))
        if tau < self.t_systole:
            return self.q_max * math.sin(math.pi * tau / self.t_systole)
        return 0.0


def _boundary_wall(A0, E0, E_inf, p0, kind, h0) -> WallModel:
    return WallModel(A0=A0, h0=h0, E0=E0, E_inf=E_inf, eta=0.0, tau_r=0.0,
                     p0=p0, kind=kind, sls_tol=math.inf)


class _ScalarWall:
    """Plain-float wall algebra for the per-stage boundary Newton loops.

    The solvers run every Runge-Kutta stage; the ndarray-based constitutive
    functions dominate the whole step cost if used here.
    """

    __slots__ = ("A0", "E0", "E_inf", "W", "m", "n", "rho", "artery")

    def __init__(self, w: WallModel, rho: float):
        self.A0 = w.A0
        self.E0 = w.E0
        self.E_inf = w.E_inf
        self.W = w.W
        self.m = w.m
        self.n = w.n
        self.rho = rho
        self.artery = w.kind is VesselKind.ARTERY

    def strain(self, alpha: float) -> float:
        return alpha**self.m - alpha**self.n

    def celerity(self, A: float) -> float:
        alpha = A / self.A0
        return math.sqrt(self.E0 * (self.m * alpha**self.m
                                    - self.n * alpha**self.n)
                         / (self.rho * self.W))

    def invariant(self, A: float, A_ref: float, w: WallModel) -> float:
        if self.artery:
            return 4.0 * (self.celerity(A) - self.celerity(A_ref))
        return invariant_integral(A, w, self.rho, A_ref=A_ref)


def inlet_state(q_in: float, A1: float, u1: float, p1: float, w: WallModel,
                rho: float, tol: float = NEWTON_TOL,
                maxit: int = NEWTON_MAXIT):
    """Boundary state (A_in, u_in, p_in) for a prescribed inflow q_in.

    Solves q_in = A u(A) with u(A) from the acoustic invariant against the
    first interior cell, then evaluates p from the contact-field relation
    (asymptotic modulus).  Newton on A with step damping.
    """
    sw = _ScalarWall(w, rho)
    eps1 = sw.strain(A1 / sw.A0)
    scale = max(abs(q_in), abs(A1 * u1), sw.A0 * sw.celerity(sw.A0))

    def u_of(A):
        return u1 + sw.invariant(A, A1, w)

    A = A1
    f = A * u_of(A) - q_in
    for _ in range(maxit):
        if abs(f) <= tol * scale:
            break
        u = u_of(A)
        df = u + sw.celerity(A)
        step = -f / df
        lam = 1.0
        while True:
            A_new = A + lam * step
            if A_new > 0:
                f_new = A_new * u_of(A_new) - q_in
                if abs(f_new) < abs(f) or abs(f_new) <= tol * scale:
                    break
            lam *= 0.5
            if lam < 1e-12:
                raise ConvergenceError("inlet Newton step collapsed")
        A, f = A_new, f_new
    else:
        raise ConvergenceError(
            f"inlet Newton did not converge: residual {f:.3e} (scale {scale:.3e})")
    u = u_of(A)
    p = p1 + (sw.E_inf / sw.W) * (sw.strain(A / sw.A0) - eps1)
    return A, u, p


def outlet_state(rcr: RcrCircuit, dt: float, AN: float, uN: float, pN: float,
                 w: WallModel, rho: float, tol: float = NEWTON_TOL,
                 maxit: int = NEWTON_MAXIT, commit: bool = True):
    """Windkessel-coupled outlet state (A*, u*, p*) and the new p_C.

    The capacitor ODE is discretised explicitly over dt (it is non-stiff);
    the area solve couples the R1 relation with the outgoing acoustic
    invariant and the contact-field relation.  With commit=False the
    capacitor state is left untouched (stage-tentative evaluation).
    """
    sw = _ScalarWall(w, rho)
    epsN = sw.strain(AN / sw.A0)
    pC = rcr.p_C

    def eval_at(A):
        u = uN - sw.invariant(A, AN, w)
        p = pN + (sw.E_inf / sw.W) * (sw.strain(A / sw.A0) - epsN)
        pC_new = pC + (dt / (rcr.C * rcr.R1)) * (p - pC) \
            - (dt / (rcr.C * rcr.R2)) * (pC - rcr.p_out)
        g = rcr.R1 * A * u - (p - pC_new)
        return u, p, pC_new, g

    # the residual has pressure units; the tube-law stiffness floors the
    # scale so states near zero transmural pressure stay solvable
    scale = max(abs(rcr.R1 * AN * uN), abs(pN), abs(pC), abs(rcr.p_out),
                sw.E_inf / sw.W)
    A = AN
    u, p, pC_new, g = eval_at(A)
    for _ in range(maxit):
        if abs(g) <= tol * scale:
            break
        alpha = A / sw.A0
        dp_dA = sw.E_inf * (sw.m * alpha**sw.m - sw.n * alpha**sw.n) / (sw.W * A)
        du_dA = -sw.celerity(A) / A
        dg = rcr.R1 * (u + A * du_dA) - dp_dA * (1.0 - dt / (rcr.C * rcr.R1))
        step = -g / dg
        lam = 1.0
        while True:
            A_new = A + lam * step
            if A_new > 0:
                out_new = eval_at(A_new)
                if abs(out_new[3]) < abs(g) or abs(out_new[3]) <= tol * scale:
                    break
            lam *= 0.5
            if lam < 1e-12:
                raise ConvergenceError("outlet Newton step collapsed")
        A = A_new
        u, p, pC_new, g = out_new
    else:
        raise ConvergenceError(
            f"outlet Newton did not converge: residual {g:.3e} (scale {scale:.3e})")
    if commit:
        rcr.p_C = pC_new
    return A, u, p, pC_new


def fill_ghosts(fields, mode: BoundaryMode, t_stage: float = 0.0,
                inlet: InletWaveform | None = None,
                rcr: RcrCircuit | None = None,
                dt_stage: float = 0.0, commit_rcr: bool = True):
    """Set the ghost entries of a FieldSet's state arrays in place.

    periodic wraps, transmissive copies the outermost interior cells, and
    physical solves the inlet/outlet systems and writes the boundary state
    into both ghost layers (first-order boundary treatment).
    """
    ng = fields.grid.n_ghost
    arrays = (fields.A, fields.Au, fields.p)
    if mode is BoundaryMode.PERIODIC:
        for a in arrays:
            a[:ng] = a[-2 * ng:-ng]
            a[-ng:] = a[ng:2 * ng]
        return None
    if mode is BoundaryMode.TRANSMISSIVE:
        for a in arrays:
            a[:ng] = a[ng]
            a[-ng:] = a[-ng - 1]
        return None
    if inlet is None or rcr is None:
        raise ParameterError("physical boundary mode needs a waveform and an RCR")
    rho = fields.rho
    iL, iR = ng, fields.grid.ntot - ng - 1
    wL = fields.wall_model_at(iL)
    wR = fields.wall_model_at(iR)
    q_in = inlet(t_stage)
    A_in, u_in, p_in = inlet_state(q_in, fields.A[iL],
                                   fields.Au[iL] / fields.A[iL], fields.p[iL],
                                   wL, rho)
    A_st, u_st, p_st, _ = outlet_state(rcr, dt_stage, fields.A[iR],
                                       fields.Au[iR] / fields.A[iR],
                                       fields.p[iR], wR, rho,
                                       commit=commit_rcr)
    fields.A[:ng] = A_in
    fields.Au[:ng] = A_in * u_in
    fields.p[:ng] = p_in
    fields.A[-ng:] = A_st
    fields.Au[-ng:] = A_st * u_st
    fields.p[-ng:] = p_st
    return (A_in, u_in, p_in), (A_st, u_st, p_st)
