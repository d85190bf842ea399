"""Exact Riemann solver for the elastic-limit system with a parameter jump.

Left and right wall parameters may differ; the parameter discontinuity sits
on the stationary contact at xi = x/t = 0, across which the flow rate and
the total pressure p + rho u^2/2 are continuous while A and p may jump.
Each genuinely-nonlinear wave lives entirely inside one constant-parameter
region, so shocks obey the Rankine-Hugoniot relations of the conservative
form valid there (momentum flux A u^2 + K(A), with K' = A F'(A)/rho = c^2),
and rarefactions preserve the acoustic invariant u -+ int c/A dA.

Star areas (A*_L, A*_R) come from a damped 2x2 Newton iteration on the two
contact conditions; the solution is sampled as a function of xi including
the interior of rarefaction fans.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .constitutive import (VesselKind, WallModel, celerity, elastic_pressure,
                           invariant_integral)
from .errors import ConvergenceError, ParameterError

NEWTON_TOL = 1e-13
NEWTON_MAXIT = 200


@dataclass(frozen=True)
class RpSide:
    """Initial data on one side: state plus elastic wall parameters."""

    A: float
    u: float
    w: WallModel


def _pressure_integral(A, w: WallModel, rho: float) -> float:
    """K(A) with K'(A) = A F'(A)/rho = c(A)^2, fixed to K(A0) = 0.

    Closed form (E A0 / (rho W)) [m/(m+1) alpha^(m+1) - n/(n+1) alpha^(n+1)].
    """
    m, n = w.m, w.n
    alpha = A / w.A0
    val = (m / (m + 1.0)) * alpha**(m + 1.0)
    if n != 0.0:
        val -= (n / (n + 1.0)) * alpha**(n + 1.0)
    return (w.E0 * w.A0 / (rho * w.W)) * val


def _wave_velocity(A_star: float, side: RpSide, rho: float, left: bool):
    """u* and du*/dA* across the left (1-) or right (3-) wave to A_star.

    Compression (A* > A_side) is a shock, expansion a rarefaction; the two
    branches meet with matching value and slope at A* = A_side.
    """
    A0, u0 = side.A, side.u
    sgn = -1.0 if left else 1.0
    dA = A_star - A0
    if abs(dA) < 1e-14 * A0:
        c = celerity(A_star, side.w, rho)
        return u0 + sgn * c / A_star * dA, sgn * c / A_star
    if A_star > A0:  # shock
        dK = _pressure_integral(A_star, side.w, rho) \
            - _pressure_integral(A0, side.w, rho)
        f = math.sqrt(dK * dA / (A_star * A0))  # |u* - u0|
        c2 = celerity(A_star, side.w, rho) ** 2
        dfdA = (c2 * dA / (A_star * A0) + dK / (A_star * A0)
                - dK * dA / (A_star * A_star * A0)) / (2.0 * f)
        return u0 + sgn * f, sgn * dfdA
    # rarefaction
    phi = invariant_integral(A_star, side.w, rho, A_ref=A0)
    c = celerity(A_star, side.w, rho)
    return u0 + sgn * phi, sgn * c / A_star


@dataclass(frozen=True)
class RpSolution:
    left: RpSide
    right: RpSide
    rho: float
    A_star_L: float
    A_star_R: float
    u_star_L: float
    u_star_R: float
    p_star_L: float
    p_star_R: float
    left_wave: str   # "shock" | "rarefaction"
    right_wave: str

    @property
    def q_star(self) -> float:
        return self.A_star_L * self.u_star_L

    def wave_speeds(self):
        """(left head, left tail, right tail, right head) in xi = x/t."""
        ls, rs = self.left, self.right
        if self.left_wave == "shock":
            s = (self.A_star_L * self.u_star_L - ls.A * ls.u) \
                / (self.A_star_L - ls.A)
            lh = lt = s
        else:
            lh = ls.u - celerity(ls.A, ls.w, self.rho)
            lt = self.u_star_L - celerity(self.A_star_L, ls.w, self.rho)
        if self.right_wave == "shock":
            s = (rs.A * rs.u - self.A_star_R * self.u_star_R) \
                / (rs.A - self.A_star_R)
            rt = rh = s
        else:
            rt = self.u_star_R + celerity(self.A_star_R, rs.w, self.rho)
            rh = rs.u + celerity(rs.A, rs.w, self.rho)
        return lh, lt, rt, rh


def _check_admissibility(sol: RpSolution) -> None:
    rho = sol.rho
    lh, lt, rt, rh = sol.wave_speeds()
    if sol.left_wave == "shock":
        lam_up = sol.left.u - celerity(sol.left.A, sol.left.w, rho)
        lam_dn = sol.u_star_L - celerity(sol.A_star_L, sol.left.w, rho)
        if not (lam_up >= lh - 1e-9 and lh >= lam_dn - 1e-9):
            raise ConvergenceError("left shock violates Lax admissibility")
    else:
        if lt < lh - 1e-12:
            raise ConvergenceError("left rarefaction fan edges are inverted")
    if sol.right_wave == "shock":
        lam_up = sol.right.u + celerity(sol.right.A, sol.right.w, rho)
        lam_dn = sol.u_star_R + celerity(sol.A_star_R, sol.right.w, rho)
        if not (lam_dn >= rh - 1e-9 and rh >= lam_up - 1e-9):
            raise ConvergenceError("right shock violates Lax admissibility")
    else:
        if rh < rt - 1e-12:
            raise ConvergenceError("right rarefaction fan edges are inverted")
    if lt > 1e-9 or rt < -1e-9:
        raise ConvergenceError("wave ordering violated (star region crosses x=0)")


def solve_rp(left: RpSide, right: RpSide, rho: float) -> RpSolution:
    """Star states from the two contact conditions (2x2 damped Newton).

    Unknowns (A*_L, A*_R); residuals: flow-rate continuity and total-pressure
    continuity across the stationary contact.
    """
    for side in (left, right):
        if side.w.tau_r != 0.0 or side.w.eta != 0.0 or side.w.E0 != side.w.E_inf:
            raise ParameterError(
                "exact solver covers the elastic closure only (tau_r = eta = 0, "
                "E0 = E_inf)")
    pL0 = elastic_pressure(left.A, left.w)
    pR0 = elastic_pressure(right.A, right.w)
    scale_q = max(abs(left.A * left.u), abs(right.A * right.u),
                  left.A * celerity(left.A, left.w, rho))
    scale_p = max(abs(pL0), abs(pR0), rho * celerity(left.A, left.w, rho) ** 2)

    def residual(AL, AR):
        uL, duL = _wave_velocity(AL, left, rho, left=True)
        uR, duR = _wave_velocity(AR, right, rho, left=False)
        pl = elastic_pressure(AL, left.w)
        pr = elastic_pressure(AR, right.w)
        r1 = AL * uL - AR * uR
        r2 = (pl + 0.5 * rho * uL * uL) - (pr + 0.5 * rho * uR * uR)
        dplda = left.w.E_inf * (left.w.m * (AL / left.w.A0)**left.w.m
                                - left.w.n * (AL / left.w.A0)**left.w.n) \
            / (left.w.W * AL)
        dprda = right.w.E_inf * (right.w.m * (AR / right.w.A0)**right.w.m
                                 - right.w.n * (AR / right.w.A0)**right.w.n) \
            / (right.w.W * AR)
        J = np.array([
            [uL + AL * duL, -(uR + AR * duR)],
            [dplda + rho * uL * duL, -(dprda + rho * uR * duR)],
        ])
        return np.array([r1, r2]), J, (uL, uR, pl, pr)

    A = np.array([0.5 * (left.A + right.A), 0.5 * (left.A + right.A)])
    res, J, extra = residual(*A)
    norm = abs(res[0]) / scale_q + abs(res[1]) / scale_p
    for _ in range(NEWTON_MAXIT):
        if norm <= NEWTON_TOL:
            break
        try:
            step = np.linalg.solve(J, -res)
        except np.linalg.LinAlgError as exc:
            raise ConvergenceError(f"singular star-state Jacobian: {exc}") from exc
        lam = 1.0
        while True:
            trial = A + lam * step
            if np.all(trial > 0):
                res_t, J_t, extra_t = residual(*trial)
                norm_t = abs(res_t[0]) / scale_q + abs(res_t[1]) / scale_p
                if norm_t < norm or norm_t <= NEWTON_TOL:
                    break
            lam *= 0.5
            if lam < 1e-14:
                raise ConvergenceError(
                    f"star-state Newton stalled at residual {norm:.3e}")
        A, res, J, extra, norm = trial, res_t, J_t, extra_t, norm_t
    else:
        raise ConvergenceError(
            f"star-state Newton did not converge (residual {norm:.3e})")

    uL, uR, pl, pr = extra
    # zero-strength waves (stationary data) classify as degenerate fans
    sol = RpSolution(
        left=left, right=right, rho=rho,
        A_star_L=float(A[0]), A_star_R=float(A[1]),
        u_star_L=float(uL), u_star_R=float(uR),
        p_star_L=float(pl), p_star_R=float(pr),
        left_wave="shock" if A[0] > left.A * (1 + 1e-11) else "rarefaction",
        right_wave="shock" if A[1] > right.A * (1 + 1e-11) else "rarefaction",
    )
    _check_admissibility(sol)
    return sol


def _sample_fan(xi: float, side: RpSide, rho: float, left: bool):
    """State inside a rarefaction fan: u -+ c = xi plus invariant constancy."""
    w = side.w
    c_side = celerity(side.A, w, rho)
    if w.kind is VesselKind.ARTERY and left:
        c = (side.u + 4.0 * c_side - xi) / 5.0
        alpha = (c * c * 2.0 * rho * w.W / w.E0) ** 2
        A = alpha * w.A0
        u = xi + c
        return A, u
    if w.kind is VesselKind.ARTERY and not left:
        c = (xi - side.u + 4.0 * c_side) / 5.0
        alpha = (c * c * 2.0 * rho * w.W / w.E0) ** 2
        A = alpha * w.A0
        u = xi - c
        return A, u

    sgn = -1.0 if left else 1.0

    def g(A):
        u = side.u + sgn * invariant_integral(A, w, rho, A_ref=side.A)
        return u + sgn * celerity(A, w, rho) - xi

    lo, hi = 1e-6 * side.A, 50.0 * side.A
    A = brentq(g, lo, hi, xtol=1e-15 * side.A, rtol=8.9e-16)
    u = side.u + sgn * invariant_integral(A, w, rho, A_ref=side.A)
    return A, u


def sample(sol: RpSolution, xi: float):
    """Self-similar profile value at xi = x/t; returns (A, Au, p)."""
    lh, lt, rt, rh = sol.wave_speeds()
    if xi <= lh:
        A, u, w = sol.left.A, sol.left.u, sol.left.w
    elif xi < lt:
        A, u = _sample_fan(xi, sol.left, sol.rho, left=True)
        w = sol.left.w
    elif xi <= 0.0:
        A, u, w = sol.A_star_L, sol.u_star_L, sol.left.w
    elif xi <= rt:
        A, u, w = sol.A_star_R, sol.u_star_R, sol.right.w
    elif xi < rh:
        A, u = _sample_fan(xi, sol.right, sol.rho, left=False)
        w = sol.right.w
    else:
        A, u, w = sol.right.A, sol.right.u, sol.right.w
    return A, A * u, elastic_pressure(A, w)


def sample_profile(sol: RpSolution, x: np.ndarray, x0: float, t: float):
    """Arrays (A, Au, p, alpha) on cell centers x at time t (jump at x0)."""
    x = np.asarray(x, dtype=float)
    A = np.empty_like(x)
    Au = np.empty_like(x)
    p = np.empty_like(x)
    alpha = np.empty_like(x)
    for i, xi_pos in enumerate(x):
        if t <= 0:
            side = sol.left if xi_pos <= x0 else sol.right
            A[i], Au[i] = side.A, side.A * side.u
            p[i] = elastic_pressure(side.A, side.w)
        else:
            A[i], Au[i], p[i] = sample(sol, (xi_pos - x0) / t)
        w = sol.left.w if xi_pos <= x0 else sol.right.w
        alpha[i] = A[i] / w.A0
    return A, Au, p, alpha
