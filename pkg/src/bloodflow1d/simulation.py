"""Simulation engine: dimensionless working state plus spatial operators.

The engine owns the dimensionless arrays (states scaled by the
characteristic scales, pressure-like parameters by rho_bar U_bar^2), the
precomputed parameter reconstructions, and the boundary treatment; the IMEX
steps in :mod:`.imex` drive it.  Everything here is single-writer per step.
"""

from __future__ import annotations

import math

import numpy as np

from . import kernels
from .boundary import (BoundaryMode, InletWaveform, RcrCircuit, inlet_state,
                       outlet_state)
from .constitutive import VesselKind, WallModel
from .errors import ConvergenceError, ParameterError, PositivityError
from .imex import ImexTableau, StepControls
from .mesh import FieldSet
from .nondim import CharacteristicScales, scales_from_initial
from .reconstruction import DEFAULT_EPS


class Engine:
    def __init__(self, fields: FieldSet, *,
                 controls: StepControls | None = None,
                 weno_eps: float = DEFAULT_EPS,
                 mode: BoundaryMode | None = None,
                 inlet: InletWaveform | None = None,
                 rcr: RcrCircuit | None = None,
                 scales: CharacteristicScales | None = None):
        grid = fields.grid
        self.grid = grid
        self.ng = grid.n_ghost
        self.interior = grid.interior
        self.kind = fields.kind
        self.controls = controls or StepControls()
        self.eps = float(weno_eps)
        self.tableau = ImexTableau.bpr343()
        if mode is None:
            mode = BoundaryMode.PERIODIC if fields.periodic \
                else BoundaryMode.TRANSMISSIVE
        self.mode = mode
        if scales is None:
            scales = scales_from_initial(grid.L, fields.interior("A"),
                                         fields.interior("E0"),
                                         fields.interior("E_inf"))
        self.scales = scales

        s = scales
        self.dx = grid.dx / s.L
        self.rho_s = fields.rho / s.rho
        self.A = fields.A / s.A
        self.Au = fields.Au / s.flow
        self.p = fields.p / s.pressure
        self.A0s = fields.A0 / s.A
        self.E0e = fields.E0 / s.pressure
        self.Einfe = fields.E_inf / s.pressure
        self.p0s = fields.p0 / s.pressure
        self.etae = fields.eta / (s.pressure * s.T)
        self.taus = fields.tau_r / s.T
        for arr in (self.A0s, self.E0e, self.Einfe, self.p0s, self.etae,
                    self.taus):
            arr.flags.writeable = False

        self.m = fields.kind.m
        self.n = fields.kind.n
        self.h0_s = fields.h0 / math.sqrt(s.A)  # preserves W under area scaling
        if fields.kind is VesselKind.ARTERY:
            self.wexp = 0.5
            self.wcoef = 1.0 / (math.sqrt(math.pi) * self.h0_s)
        else:
            self.wexp = 1.5
            self.wcoef = 12.0 / (math.pi**1.5 * self.h0_s**3)
        self.Wc = self.wcoef * self.A0s**self.wexp

        self.A0_faces = self._faces(self.A0s)
        self.E0_faces = self._faces(self.E0e)
        self.eta_faces = self._faces(self.etae)
        # static parameter values at the two in-cell Gauss nodes, for the
        # cell-averaged tube-law evaluation of the relaxation source
        xi = 0.5 / math.sqrt(3.0)
        self._gauss_xi = (-xi, xi)
        self._param_nodes = []
        for g in range(2):
            nodes = {}
            for name, arr, faces in (("A0", self.A0s, self.A0_faces),
                                     ("Einf", self.Einfe, None),
                                     ("p0", self.p0s, None)):
                if faces is None:
                    fm, fp = self._faces(arr)
                else:
                    fm, fp = faces
                b = fp - fm
                c = 3.0 * (fp + fm) - 6.0 * arr
                a = arr - c / 12.0
                nodes[name] = a + b * self._gauss_xi[g] \
                    + c * self._gauss_xi[g] ** 2
            nodes["W"] = self.wcoef * nodes["A0"] ** self.wexp
            self._param_nodes.append(nodes)

        self.inlet = inlet.scaled(s.flow, s.T) if inlet is not None else None
        self.rcr = rcr.scaled(s.pressure, s.flow, s.T) if rcr is not None else None
        if mode is BoundaryMode.PHYSICAL and (self.inlet is None or self.rcr is None):
            raise ParameterError("physical boundaries need a waveform and an RCR")
        self._bc_in = None
        self._bc_out = None
        self._full_ops_stage = [
            bool(np.any(self.tableau.a_ex[:, k] != 0.0)
                 or self.tableau.b_ex[k] != 0.0)
            for k in range(self.tableau.stages)
        ]
        self.t = 0.0

    # -- helpers -----------------------------------------------------------

    def _faces(self, arr):
        qm = np.empty_like(arr)
        qp = np.empty_like(arr)
        kernels.weno3_faces(arr, self.eps, qm, qp)
        return qm, qp

    def _edge_wall(self, i: int) -> WallModel:
        return WallModel(A0=self.A0s[i], h0=self.h0_s, E0=self.E0e[i],
                         E_inf=self.Einfe[i], eta=0.0, tau_r=0.0,
                         p0=self.p0s[i], kind=self.kind, sls_tol=math.inf)

    def stage_needs_full_ops(self, k: int) -> bool:
        return self._full_ops_stage[k]

    def check_positive(self, A, stage: int) -> None:
        inner = A[self.interior]
        if np.any(inner <= 0.0) or not np.all(np.isfinite(inner)):
            bad = int(np.argmin(inner))
            raise PositivityError(cell=bad, stage=stage, value=float(inner[bad]))

    def _strain_field(self, alpha):
        if self.kind is VesselKind.ARTERY:
            return np.sqrt(alpha) - 1.0
        return alpha**self.m - alpha**self.n

    def _gm_field(self, alpha):
        # m alpha^m - n alpha^n
        if self.kind is VesselKind.ARTERY:
            return 0.5 * np.sqrt(alpha)
        return self.m * alpha**self.m - self.n * alpha**self.n

    def elastic_pressure_field(self, A) -> np.ndarray:
        alpha = A / self.A0s
        return self.p0s + (self.Einfe / self.Wc) * self._strain_field(alpha)

    def elastic_pressure_average(self, A, faces) -> np.ndarray:
        """Cell average of the tube law over the sub-cell quadratic of A.

        Midpoint evaluation of the nonlinear law is only second-order
        accurate as a cell average; the stiff relaxation pins p to this
        quantity, so the quadrature matters for third order in the
        diffusive regime.  For piecewise-constant data it reduces exactly
        to the midpoint value (well-balance is untouched).
        """
        Am, Ap = faces[0], faces[1]
        b = Ap - Am
        c = 3.0 * (Ap + Am) - 6.0 * A
        a = A - c / 12.0
        out = np.zeros_like(A)
        for g in range(2):
            nodes = self._param_nodes[g]
            Aq = a + b * self._gauss_xi[g] + c * self._gauss_xi[g] ** 2
            alpha = Aq / nodes["A0"]
            out += 0.5 * (nodes["p0"] + (nodes["Einf"] / nodes["W"])
                          * (alpha**self.m - alpha**self.n))
        return out

    def transport_field(self, A) -> np.ndarray:
        alpha = A / self.A0s
        return self._gm_field(alpha) / (self.Wc * A)

    def celerity_field(self, A) -> np.ndarray:
        return np.sqrt(A * self.E0e * self.transport_field(A) / self.rho_s)

    def max_wave_speed(self) -> float:
        sl = self.interior
        c = self.celerity_field(self.A)[sl]
        u = np.abs(self.Au[sl] / self.A[sl])
        return float(np.max(u + c))

    def overdamped_number(self) -> float:
        """max over cells of (|u|+c) tau_r pi / dx.

        Below ~O(1) the relaxation overdamps every resolved acoustic mode
        and the diffusive-limit (parabolic) time-step bound is meaningful.
        """
        sl = self.interior
        c = self.celerity_field(self.A)[sl]
        u = np.abs(self.Au[sl] / self.A[sl])
        return float(np.max((u + c) * self.taus[sl]) * math.pi / self.dx)

    def max_slow_wave_speed(self) -> float:
        """max |u| + c_inf with the asymptotic-modulus celerity.

        These are the wave speeds of the relaxed (equilibrium) system; even
        in the diffusive regime the explicit part must resolve them.
        """
        sl = self.interior
        alpha = self.A[sl] / self.A0s[sl]
        g = self._gm_field(alpha) / (self.Wc[sl] * self.A[sl])
        c_inf = np.sqrt(self.A[sl] * self.Einfe[sl] * g / self.rho_s)
        u = np.abs(self.Au[sl] / self.A[sl])
        return float(np.max(u + c_inf))

    # -- ghosts ------------------------------------------------------------

    def fill_state_ghosts(self, A, Au, p_read, t_stage: float, dt_stage: float,
                          commit_rcr: bool = False) -> None:
        """Set ghost A and Au; p_read is only consulted for boundary solves.

        In physical mode the inlet/outlet states are stored so the stage's
        pressure ghosts can be written after the implicit solve.
        """
        ng = self.ng
        if self.mode is BoundaryMode.PERIODIC:
            for a in (A, Au):
                a[:ng] = a[-2 * ng:-ng]
                a[-ng:] = a[ng:2 * ng]
            return
        if self.mode is BoundaryMode.TRANSMISSIVE:
            for a in (A, Au):
                a[:ng] = a[ng]
                a[-ng:] = a[-ng - 1]
            return
        iL = ng
        iR = self.grid.ntot - ng - 1
        q_in = self.inlet(t_stage)
        A_in, u_in, p_in = inlet_state(q_in, A[iL], Au[iL] / A[iL], p_read[iL],
                                       self._edge_wall(iL), self.rho_s)
        A_out, u_out, p_out, _ = outlet_state(self.rcr, dt_stage, A[iR],
                                              Au[iR] / A[iR], p_read[iR],
                                              self._edge_wall(iR), self.rho_s,
                                              commit=commit_rcr)
        A[:ng] = A_in
        Au[:ng] = A_in * u_in
        A[-ng:] = A_out
        Au[-ng:] = A_out * u_out
        self._bc_in = (A_in, u_in, p_in)
        self._bc_out = (A_out, u_out, p_out)

    def fill_p_ghosts(self, p) -> None:
        ng = self.ng
        if self.mode is BoundaryMode.PERIODIC:
            p[:ng] = p[-2 * ng:-ng]
            p[-ng:] = p[ng:2 * ng]
        elif self.mode is BoundaryMode.TRANSMISSIVE:
            p[:ng] = p[ng]
            p[-ng:] = p[-ng - 1]
        else:
            p[:ng] = self._bc_in[2]
            p[-ng:] = self._bc_out[2]

    # -- spatial operators ---------------------------------------------------

    def reconstruct_state(self, A, Au):
        Am = np.empty_like(A)
        Ap = np.empty_like(A)
        Aum = np.empty_like(A)
        Aup = np.empty_like(A)
        kernels.weno3_faces(A, self.eps, Am, Ap)
        kernels.weno3_faces(Au, self.eps, Aum, Aup)
        if np.any(Am[self.ng - 1:-self.ng + 1] <= 0) \
                or np.any(Ap[self.ng - 1:-self.ng + 1] <= 0):
            raise PositivityError(cell=-1, stage=-1,
                                  value=float(min(Am.min(), Ap.min())))
        return Am, Ap, Aum, Aup

    def reconstruct_p(self, p):
        pm = np.empty_like(p)
        pp = np.empty_like(p)
        kernels.weno3_faces(p, self.eps, pm, pp)
        return pm, pp

    def row3_centered(self, A, Au, faces, viscosity_slot: bool = False):
        """Centred discrete coefficient*d(Au)/dx of the pressure row.

        With viscosity_slot=True the coefficient is eta G(A) instead of
        E0 G(A) (used by the diffusive-limit oracle).
        """
        Am, Ap, Aum, Aup = faces
        coef = self.etae if viscosity_slot else self.E0e
        cfaces = self.eta_faces if viscosity_slot else self.E0_faces
        op3c = np.zeros_like(A)
        kernels.row3_ops(A, Au, Am, Ap, Aum, Aup,
                         self.A0_faces[0], self.A0_faces[1],
                         cfaces[0], cfaces[1], self.A0s, coef,
                         self.m, self.n, self.wcoef, self.wexp,
                         self.dx, self.ng, op3c)
        return op3c

    def prepare_pressure(self) -> None:
        """Project p onto the scheme's own relaxed manifold.

        Sets p = F(A) - tau_r * (discrete E0 G dAu/dx) using the same
        centred transport operator the implicit stages see; this is the
        discrete counterpart of well-prepared data and is what makes the
        one-step asymptotic-limit identities exact up to O(tau_r/dt).
        """
        self.fill_state_ghosts(self.A, self.Au, self.p, self.t, 0.0)
        faces = self.reconstruct_state(self.A, self.Au)
        op3c = self.row3_centered(self.A, self.Au, faces)
        self.p = self.elastic_pressure_field(self.A) - self.taus * op3c
        self.fill_p_ghosts(self.p)

    def rows12(self, A, Au, p, faces, pfaces, smax_cap: float):
        Am, Ap, Aum, Aup = faces
        pm, pp = pfaces
        op1 = np.zeros_like(A)
        op2 = np.zeros_like(A)
        op3d = np.zeros_like(A)
        status = kernels.rows12_ops(A, Au, p, Am, Ap, Aum, Aup, pm, pp,
                                    self.A0_faces[0], self.A0_faces[1],
                                    self.E0_faces[0], self.E0_faces[1],
                                    self.A0s, self.E0e,
                                    self.m, self.n, self.wcoef, self.wexp,
                                    self.rho_s, self.dx, smax_cap, self.ng,
                                    op1, op2, op3d)
        if status >= 0:
            raise ConvergenceError(
                f"singular eigenvector matrix on the path at interface {status} "
                f"(transcritical u = +-c or c = 0)")
        return op1, op2, op3d

    # -- output --------------------------------------------------------------

    def to_physical(self) -> dict:
        s = self.scales
        sl = self.interior
        A = self.A[sl] * s.A
        Au = self.Au[sl] * s.flow
        return {
            "x": self.grid.centers(),
            "A": A,
            "Au": Au,
            "u": Au / A,
            "p": self.p[sl] * s.pressure,
            "alpha": self.A[sl] / self.A0s[sl],
        }

    def probe_sample(self, cells) -> dict:
        s = self.scales
        out = {"t": self.t * s.T}
        idx = [self.ng + int(c) for c in cells]
        A = self.A[idx] * s.A
        Au = self.Au[idx] * s.flow
        out.update({"A": A, "Au": Au, "u": Au / A,
                    "p": self.p[idx] * s.pressure,
                    "alpha": self.A[idx] / self.A0s[idx]})
        return out


def run(engine: Engine, t_end: float, on_step=None,
        stop_times=None) -> Engine:
    """March the engine to t_end (physical seconds), landing exactly on
    every requested stop time and on t_end."""
    from .imex import compute_dt, imex_step

    s = engine.scales
    t_end_s = t_end / s.T
    stops = sorted({t / s.T for t in (stop_times or [])} | {t_end_s})
    for target in stops:
        if target > t_end_s + 1e-15:
            break
        while engine.t < target * (1.0 - 1e-14) - 1e-300:
            dt = compute_dt(engine)
            dt = min(dt, target - engine.t)
            imex_step(engine, dt)
            if on_step is not None:
                on_step(engine)
    return engine
