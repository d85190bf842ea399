"""Globally stiffly accurate IMEX Runge-Kutta time stepping (BPR(3,4,3)).

The explicit tableau advances mass and momentum (plus the upwind-dissipation
share of the pressure row); the diagonally-implicit tableau advances the
pressure-transport term and the stiff relaxation source.  Because the source
is linear in p and the method is DIRK, each stage's pressure has the closed
form

    p = [tau (S - dt a_kk K) + dt a_kk F] / (tau + dt a_kk),

where K is the centred transport operator and S collects all earlier-stage
terms; the source value is then recovered by rearrangement instead of
dividing by tau, which keeps the scheme exact at tau = 0 (purely elastic
wall) and free of cancellation for tau -> 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError


@dataclass(frozen=True)
class ImexTableau:
    a_ex: np.ndarray
    b_ex: np.ndarray
    c_ex: np.ndarray
    a_im: np.ndarray
    b_im: np.ndarray
    c_im: np.ndarray

    @property
    def stages(self) -> int:
        return self.b_ex.shape[0]

    def validate(self, tol: float = 1e-14) -> None:
        s = self.stages
        if self.a_ex.shape != (s, s) or self.a_im.shape != (s, s):
            raise ParameterError("tableau matrices must be s x s")
        if np.any(np.abs(np.triu(self.a_ex)) > 0):
            raise ParameterError("explicit tableau must be strictly lower triangular")
        if np.any(np.abs(np.triu(self.a_im, 1)) > 0):
            raise ParameterError("implicit tableau must be lower triangular (DIRK)")
        # globally stiffly accurate: last row equals the weights
        if np.max(np.abs(self.a_im[-1] - self.b_im)) > tol:
            raise ParameterError("implicit tableau is not stiffly accurate")
        if np.max(np.abs(self.a_ex[-1, :-1] - self.b_ex[:-1])) > tol:
            raise ParameterError("explicit tableau is not globally stiffly accurate")
        # type CK: first implicit row zero, trailing block invertible
        if np.any(np.abs(self.a_im[0]) > 0):
            raise ParameterError("first implicit row must vanish (type CK)")
        if np.any(np.abs(np.diag(self.a_im)[1:]) < tol):
            raise ParameterError("implicit diagonal must be nonzero from stage 2 on")
        if np.max(np.abs(self.a_ex.sum(axis=1) - self.c_ex)) > tol \
                or np.max(np.abs(self.a_im.sum(axis=1) - self.c_im)) > tol:
            raise ParameterError("tableau row sums must equal the abscissae")

    @classmethod
    def bpr343(cls) -> "ImexTableau":
        """Third-order GSA BPR(3,4,3): 3 explicit evaluations, 4 implicit solves."""
        a_ex = np.array([
            [0.0, 0.0, 0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0, 0.0],
            [4.0 / 9.0, 2.0 / 9.0, 0.0, 0.0, 0.0],
            [0.25, 0.0, 0.75, 0.0, 0.0],
            [0.25, 0.0, 0.75, 0.0, 0.0],
        ])
        b_ex = np.array([0.25, 0.0, 0.75, 0.0, 0.0])
        a_im = np.array([
            [0.0, 0.0, 0.0, 0.0, 0.0],
            [0.5, 0.5, 0.0, 0.0, 0.0],
            [5.0 / 18.0, -1.0 / 9.0, 0.5, 0.0, 0.0],
            [0.5, 0.0, 0.0, 0.5, 0.0],
            [0.25, 0.0, 0.75, -0.5, 0.5],
        ])
        b_im = np.array([0.25, 0.0, 0.75, -0.5, 0.5])
        c = np.array([0.0, 1.0, 2.0 / 3.0, 1.0, 1.0])
        tab = cls(a_ex=a_ex, b_ex=b_ex, c_ex=c.copy(),
                  a_im=a_im, b_im=b_im, c_im=c.copy())
        tab.validate()
        return tab


@dataclass(frozen=True)
class StepControls:
    cfl: float = 0.9
    nu: float = 0.5
    dt_min: float = 0.0
    dt_max: float = np.inf
    # overdamped-regime margin: the parabolic bound applies only when the
    # relaxation overdamps the fastest resolved acoustic mode,
    # (|u|+c) tau pi / dx <= theta; outside it the CFL governs
    theta: float = 2.5

    def __post_init__(self):
        if not 0 < self.cfl <= 1:
            raise ParameterError("need 0 < CFL <= 1")
        if self.nu <= 0:
            raise ParameterError("need nu > 0")


def compute_dt(engine) -> float:
    """Less restrictive of the hyperbolic CFL and the parabolic bound.

    The implicit relaxation removes the stiff acoustic constraint, so in the
    diffusive regime (c -> infinity) the parabolic bound nu dx^2 governs.
    That bound presumes the parabolic regime actually holds on the grid:
    the fastest resolved mode must be overdamped, (|u|+c) tau_r pi/dx <=
    theta; in the underdamped stiff regime (e.g. a stented tract at coarse
    resolution) the hyperbolic CFL is kept instead.  Clamped to
    [dt_min, dt_max].
    """
    smax = engine.max_wave_speed()
    if not np.isfinite(smax) or smax <= 0:
        raise ParameterError(f"non-finite wave speeds (max |u|+c = {smax})")
    ctr = engine.controls
    dt_hyp = ctr.cfl * engine.dx / smax
    dt_par = ctr.nu * engine.dx**2
    dt = dt_hyp
    if dt_par > dt_hyp and engine.overdamped_number() <= ctr.theta:
        # the relaxed system's own (slow) waves still bound the explicit part
        dt_slow = ctr.cfl * engine.dx / engine.max_slow_wave_speed()
        dt = max(dt_hyp, min(dt_par, dt_slow))
    return float(min(max(dt, ctr.dt_min), ctr.dt_max))


def _explicit_state(engine, k, A_st, Au_st, op1, op2, dt, tab):
    """Stage-k mass/momentum fields from the explicit tableau."""
    A = engine.A.copy()
    Au = engine.Au.copy()
    sl = engine.interior
    for j in range(k):
        aa = tab.a_ex[k, j]
        if aa != 0.0:
            A[sl] -= dt * aa * op1[j][sl]
            Au[sl] -= dt * aa * op2[j][sl]
    engine.check_positive(A, stage=k + 1)
    return A, Au


def imex_step(engine, dt: float) -> None:
    """One BPR(3,4,3) step of the augmented system; GSA, so the new state is
    the last internal stage."""
    tab = engine.tableau
    s = tab.stages
    sl = engine.interior
    dtau = engine.taus
    smax_cap = engine.controls.cfl * engine.dx / dt

    A_st = [None] * s
    Au_st = [None] * s
    p_st = [None] * s
    op1 = [None] * s
    op2 = [None] * s
    op3c = [None] * s
    op3d = [None] * s
    r = [None] * s

    for k in range(s):
        if k == 0:
            Ak, Auk = engine.A.copy(), engine.Au.copy()
        else:
            Ak, Auk = _explicit_state(engine, k, A_st, Au_st, op1, op2, dt, tab)
        p_lag = p_st[k - 1] if k > 0 else engine.p
        t_k = engine.t + tab.c_ex[k] * dt
        engine.fill_state_ghosts(Ak, Auk, p_lag, t_k, tab.c_ex[k] * dt,
                                 commit_rcr=(k == s - 1))
        faces = engine.reconstruct_state(Ak, Auk)
        op3c[k] = engine.row3_centered(Ak, Auk, faces)
        Fk = engine.elastic_pressure_field(Ak)

        if k == 0:
            pk = engine.p.copy()
            r0 = np.zeros_like(pk)
            np.divide(pk - Fk, dtau, out=r0, where=dtau > 0)
            r[0] = r0
        else:
            akk = tab.a_im[k, k]
            S = engine.p.copy()
            for j in range(k):
                aij = tab.a_im[k, j]
                if aij != 0.0:
                    S[sl] -= dt * aij * (op3c[j][sl] + r[j][sl])
                aex = tab.a_ex[k, j]
                if aex != 0.0 and op3d[j] is not None:
                    S[sl] -= dt * aex * op3d[j][sl]
            pk = Fk.copy()
            core = S[sl] - dt * akk * op3c[k][sl]
            pk[sl] = (dtau[sl] * core + dt * akk * Fk[sl]) / (dtau[sl] + dt * akk)
            rk = np.zeros_like(pk)
            rk[sl] = (core - pk[sl]) / (dt * akk)
            r[k] = rk
        engine.fill_p_ghosts(pk)

        if engine.stage_needs_full_ops(k):
            pfaces = engine.reconstruct_p(pk)
            op1[k], op2[k], op3d[k] = engine.rows12(Ak, Auk, pk, faces, pfaces,
                                                    smax_cap)
        A_st[k], Au_st[k], p_st[k] = Ak, Auk, pk

    engine.A, engine.Au, engine.p = A_st[-1], Au_st[-1], p_st[-1]
    engine.t += dt


def limit_step_elastic(engine, dt: float) -> None:
    """Explicit RK step of the elastic-limit system (p identically F(A)).

    Shares the reconstruction and path-conservative operators with the full
    scheme; serves as the hyperbolic-limit oracle for the AP tests.
    """
    tab = engine.tableau
    s = tab.stages
    smax_cap = engine.controls.cfl * engine.dx / dt
    A_st = [None] * s
    Au_st = [None] * s
    op1 = [None] * s
    op2 = [None] * s
    for k in range(s):
        if k == 0:
            Ak, Auk = engine.A.copy(), engine.Au.copy()
        else:
            Ak, Auk = _explicit_state(engine, k, A_st, Au_st, op1, op2, dt, tab)
        t_k = engine.t + tab.c_ex[k] * dt
        engine.fill_state_ghosts(Ak, Auk, engine.p, t_k, tab.c_ex[k] * dt,
                                 commit_rcr=(k == s - 1))
        faces = engine.reconstruct_state(Ak, Auk)
        # stage 1 keeps the (well-prepared) datum; later stages sit exactly
        # on the relaxed manifold
        pk = engine.p.copy() if k == 0 else engine.elastic_pressure_field(Ak)
        if engine.stage_needs_full_ops(k):
            pfaces = engine.reconstruct_p(pk)
            op1[k], op2[k], _ = engine.rows12(Ak, Auk, pk, faces, pfaces,
                                              smax_cap)
        A_st[k], Au_st[k], p_st = Ak, Auk, pk
    engine.A, engine.Au = A_st[-1], Au_st[-1]
    engine.p = p_st
    engine.t += dt


def limit_step_diffusive(engine, dt: float) -> None:
    """Explicit step of the diffusive-limit system.

    Stage pressures are built as p = F(A) - eta G(A) d(Au)/dx with the same
    centred transport operator the implicit scheme collapses to; this is the
    Kelvin-Voigt-limit oracle for the AP tests (dt must satisfy the
    parabolic bound).
    """
    tab = engine.tableau
    s = tab.stages
    smax_cap = engine.controls.cfl * engine.dx / dt
    A_st = [None] * s
    Au_st = [None] * s
    op1 = [None] * s
    op2 = [None] * s
    for k in range(s):
        if k == 0:
            Ak, Auk = engine.A.copy(), engine.Au.copy()
        else:
            Ak, Auk = _explicit_state(engine, k, A_st, Au_st, op1, op2, dt, tab)
        t_k = engine.t + tab.c_ex[k] * dt
        engine.fill_state_ghosts(Ak, Auk, engine.p, t_k, tab.c_ex[k] * dt,
                                 commit_rcr=(k == s - 1))
        faces = engine.reconstruct_state(Ak, Auk)
        if k == 0:
            pk = engine.p.copy()  # the well-prepared datum
        else:
            visc = engine.row3_centered(Ak, Auk, faces, viscosity_slot=True)
            pk = engine.elastic_pressure_field(Ak)
            pk[engine.interior] -= visc[engine.interior]
        engine.fill_p_ghosts(pk)
        if engine.stage_needs_full_ops(k):
            pfaces = engine.reconstruct_p(pk)
            op1[k], op2[k], _ = engine.rows12(Ak, Auk, pk, faces, pfaces,
                                              smax_cap)
        A_st[k], Au_st[k] = Ak, Auk
        if k == s - 1:
            engine.A, engine.Au, engine.p = Ak, Auk, pk
    engine.t += dt
