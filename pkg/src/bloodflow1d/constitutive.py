"""Tube-law closures, wall-parameter algebra and wave structure.

All functions work in SI units and accept scalars or numpy arrays for the
state arguments.  The wall mechanics are those of a standard linear solid
(spring in series with a Kelvin-Voigt unit): instantaneous modulus ``E0``,
asymptotic modulus ``E_inf``, wall viscosity ``eta`` and relaxation time
``tau_r``.  Setting ``E_inf = E0`` (with ``tau_r = eta = 0``) recovers the
purely elastic wall, ``E_inf = 0`` the Maxwell wall, and the small-``tau_r``
large-``E0`` regime the Kelvin-Voigt (diffusive) wall.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .errors import ConvergenceError, DomainError, ParameterError

MMHG = 133.322387415  # Pa per mmHg; fixed so table values round-trip bit-stably


class VesselKind(enum.Enum):
    ARTERY = "artery"
    VEIN = "vein"

    @property
    def m(self) -> float:
        return 0.5 if self is VesselKind.ARTERY else 10.0

    @property
    def n(self) -> float:
        return 0.0 if self is VesselKind.ARTERY else -1.5

    def wall_coefficient(self, a0: float, h0: float) -> float:
        """Dimensionless stiffness denominator W built from equilibrium radius.

        Arteries: W = R0/h0.  Veins: W = 12 R0^3 / h0^3.
        """
        r0 = math.sqrt(a0 / math.pi)
        if self is VesselKind.ARTERY:
            return r0 / h0
        return 12.0 * r0**3 / h0**3


@dataclass(frozen=True)
class WallModel:
    """Per-segment wall mechanics and equilibrium geometry."""

    A0: float          # equilibrium cross-sectional area [m^2]
    h0: float          # wall thickness [m]
    E0: float          # instantaneous Young modulus [Pa]
    E_inf: float       # asymptotic Young modulus [Pa]
    eta: float         # wall viscosity [Pa s]
    tau_r: float       # relaxation time [s]
    p0: float          # equilibrium pressure [Pa]
    kind: VesselKind = VesselKind.ARTERY
    sls_tol: float = field(default=1e-3, compare=False)

    def __post_init__(self):
        if not (self.A0 > 0 and self.h0 > 0 and self.E0 > 0):
            raise ParameterError("A0, h0 and E0 must be positive")
        if not (0.0 <= self.E_inf <= self.E0):
            raise ParameterError("need 0 <= E_inf <= E0")
        if self.eta < 0 or self.tau_r < 0:
            raise ParameterError("eta and tau_r must be non-negative")
        if self.tau_r > 0 and self.eta > 0:
            expected = (self.E0 - self.E_inf) * self.eta / self.E0**2
            if abs(expected - self.tau_r) > self.sls_tol * max(self.tau_r, expected):
                raise ParameterError(
                    f"inconsistent SLS parameters: tau_r={self.tau_r:.6e} but "
                    f"(E0-E_inf)*eta/E0^2={expected:.6e}"
                )

    @property
    def m(self) -> float:
        return self.kind.m

    @property
    def n(self) -> float:
        return self.kind.n

    @property
    def R0(self) -> float:
        return math.sqrt(self.A0 / math.pi)

    @property
    def W(self) -> float:
        return self.kind.wall_coefficient(self.A0, self.h0)

    @property
    def E1(self) -> float:
        """Modulus of the spring inside the Kelvin-Voigt unit.

        Diverges as E_inf -> E0 (that limit is the purely elastic wall).
        """
        if self.E_inf >= self.E0:
            raise ParameterError("E1 is unbounded for E_inf = E0 (elastic limit)")
        return self.E0 * self.E_inf / (self.E0 - self.E_inf)

    @property
    def viscous_gamma(self) -> float:
        """Lumped arterial viscosity parameter eta*h0*sqrt(pi)/2."""
        return self.eta * self.h0 * math.sqrt(math.pi) / 2.0


@dataclass(frozen=True)
class CellState:
    """Evolved unknowns of one cell: area, flow rate, pressure."""

    A: float
    Au: float
    p: float

    def __post_init__(self):
        if not self.A > 0:
            raise DomainError(f"non-positive area A={self.A}")

    @property
    def u(self) -> float:
        return self.Au / self.A

    def alpha(self, w: WallModel) -> float:
        return self.A / w.A0


@dataclass(frozen=True)
class Eigenstructure:
    lambdas: np.ndarray  # (u-c, 0, u+c)
    R: np.ndarray        # right eigenvectors as columns, 3x3
    Rinv: np.ndarray     # closed-form inverse, 3x3


class Regime(enum.Enum):
    SLS = "sls"
    ELASTIC_LIMIT = "elastic"
    DIFFUSIVE_LIMIT = "diffusive"
    MAXWELL = "maxwell"


def strain(alpha, kind: VesselKind):
    """Wall strain alpha^m - alpha^n for the kind's exponents."""
    alpha = np.asarray(alpha, dtype=float)
    if np.any(alpha <= 0):
        raise DomainError("area ratio must be positive")
    out = alpha**kind.m - alpha**kind.n
    return out if out.ndim else float(out)

def elastic_pressure(A, w: WallModel):
    """Equilibrium tube law p = p0 + (E_inf/W)(alpha^m - alpha^n)."""
    A = np.asarray(A, dtype=float)
    if np.any(A <= 0):
        raise DomainError("area must be positive")
    out = w.p0 + (w.E_inf / w.W) * strain(A / w.A0, w.kind)
    return out if np.ndim(out) else float(out)


def transport_coeff(A, w: WallModel):
    """G(A) = (m alpha^m - n alpha^n) / (W A); positive for admissible (m, n)."""
    A = np.asarray(A, dtype=float)
    if np.any(A <= 0):
        raise DomainError("area must be positive")
    alpha = A / w.A0
    out = (w.m * alpha**w.m - w.n * alpha**w.n) / (w.W * A)
    return out if out.ndim else float(out)


def celerity(A, w: WallModel, rho: float):
    """Wave speed c = sqrt(A E0 G(A) / rho)."""
    if rho <= 0:
        raise DomainError("density must be positive")
    A = np.asarray(A, dtype=float)
    rad = A * w.E0 * transport_coeff(A, w) / rho
    if np.any(rad <= 0):
        raise ParameterError("non-positive celerity radicand; invalid (m, n)?")
    out = np.sqrt(rad)
    return out if out.ndim else float(out)


def relaxation_modulus(t, w: WallModel):
    """Stress-relaxation modulus E(t) = E0 e^(-t/tau) + E_inf (1 - e^(-t/tau)).

    For tau_r = 0 the limit value is used: E0 at t = 0, E_inf for t > 0.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("time must be non-negative")
    if w.tau_r == 0.0:
        out = np.where(t == 0.0, w.E0, w.E_inf)
    else:
        decay = np.exp(-t / w.tau_r)
        out = w.E0 * decay + w.E_inf * (1.0 - decay)
    return out if out.ndim else float(out)


def sls_source(state: CellState, w: WallModel):
    """Pressure relaxation rate -(p - F(A))/tau_r of the augmented system."""
    if w.tau_r <= 0:
        raise ParameterError(
            "sls_source needs tau_r > 0; the relaxed limit is handled by the "
            "elastic closure, not by this source"
        )
    return -(state.p - elastic_pressure(state.A, w)) / w.tau_r


def kv_pressure(A, dAu_dx, w: WallModel):
    """Kelvin-Voigt closure p = F(A) - eta G(A) d(Au)/dx."""
    return elastic_pressure(A, w) - w.eta * transport_coeff(A, w) * dAu_dx


def perturbed_pressure(A, dAu_dx, w: WallModel):
    """Second-order small-viscosity closure.

    Like the Kelvin-Voigt law but with the viscosity reduced by the factor
    ((E0 - E_inf)/E0)^2; coincides with kv_pressure for E_inf = 0 and with
    elastic_pressure for E_inf = E0.
    """
    factor = ((w.E0 - w.E_inf) / w.E0) ** 2
    return elastic_pressure(A, w) - factor * w.eta * transport_coeff(A, w) * dAu_dx


def eigenstructure(state: CellState, w: WallModel, rho: float) -> Eigenstructure:
    """Wave speeds and the full right/left eigenvector pair.

    R columns are (1, u-c, E0 G), (1, 0, rho u^2/A), (1, u+c, E0 G); the
    inverse is assembled in closed form and fails loudly at the resonance
    u = +-c (or c = 0) where R is singular.
    """
    u = state.u
    c = celerity(state.A, w, rho)
    g = w.E0 * transport_coeff(state.A, w)
    k = rho * u * u / state.A
    det = 2.0 * c * (g - k)
    if abs(det) < 1e-14 * max(abs(g), abs(k), 1.0) * max(c, 1.0):
        raise ParameterError(f"singular eigenvector matrix (u={u}, c={c})")
    lambdas = np.array([u - c, 0.0, u + c])
    R = np.array([
        [1.0, 1.0, 1.0],
        [u - c, 0.0, u + c],
        [g, k, g],
    ])
    Rinv = np.array([
        [-k * (u + c), -(g - k), u + c],
        [2.0 * c * g, 0.0, -2.0 * c],
        [k * (u - c), g - k, c - u],
    ]) / det
    # normalise columns (eigenvectors are scale-free); keeps R*Rinv near the
    # identity to machine precision even in SI units, where the raw entries
    # span many orders of magnitude
    norms = np.sqrt((R * R).sum(axis=0))
    R = R / norms
    Rinv = Rinv * norms[:, None]
    return Eigenstructure(lambdas=lambdas, R=R, Rinv=Rinv)


def invariant_integral(A, w: WallModel, rho: float, A_ref: float | None = None):
    """The acoustic integral  int_{A_ref}^{A} c(a)/a da.

    Closed form 4(c(A) - c(A_ref)) for arteries; adaptive quadrature for
    veins, where the exponents (10, -3/2) admit no antiderivative in
    elementary functions.  Default reference is the equilibrium area.
    """
    if A_ref is None:
        A_ref = w.A0
    if w.kind is VesselKind.ARTERY:
        return 4.0 * (celerity(A, w, rho) - celerity(A_ref, w, rho))
    coef = math.sqrt(w.E0 / (rho * w.W))

    def integrand(alpha):
        return coef * math.sqrt(w.m * alpha**w.m - w.n * alpha**w.n) / alpha

    val, err = quad(integrand, A_ref / w.A0, A / w.A0, epsabs=1e-12, epsrel=1e-12,
                    limit=200)
    if err > 1e-9 * max(1.0, abs(val)):
        raise ConvergenceError(
            f"vein invariant quadrature error {err:.3e} for A={A}, A_ref={A_ref}"
        )
    return val


def area_from_pressure(p: float, w: WallModel) -> float:
    """Invert the elastic tube law: the A with elastic_pressure(A, w) = p.

    Closed form for arteries; bracketed root solve for veins.
    """
    psi = (p - w.p0) * w.W / w.E_inf
    if w.kind is VesselKind.ARTERY:
        root = 1.0 + psi
        if root <= 0:
            raise DomainError(f"pressure {p} below the collapse limit")
        return root * root * w.A0
    from scipy.optimize import brentq

    def g(alpha):
        return strain(alpha, w.kind) - psi

    lo, hi = 1e-8, 1.0
    while g(hi) < 0:
        hi *= 2.0
        if hi > 1e6:
            raise ConvergenceError("vein tube-law inversion failed to bracket")
    return brentq(g, lo, hi, xtol=1e-300, rtol=8.9e-16) * w.A0


def riemann_invariants(state: CellState, w: WallModel, rho: float):
    """All five invariants (G1, G2, G3, G1_LD, G2_LD).

    G1/G2 belong to the genuinely nonlinear fields (u -+ the acoustic
    integral; u -+ 4c in arteries), G3 to the contact field, and the two LD
    invariants (Au, p + rho u^2/2) are the quantities preserved across the
    stationary contact.
    """
    u = state.u
    if w.kind is VesselKind.ARTERY:
        c = celerity(state.A, w, rho)
        g1, g2 = u - 4.0 * c, u + 4.0 * c
    else:
        integral = invariant_integral(state.A, w, rho)
        g1, g2 = u - integral, u + integral
    g3 = state.p - (w.E0 / w.W) * strain(state.A / w.A0, w.kind)
    g1_ld = state.Au
    g2_ld = state.p + 0.5 * rho * u * u
    return g1, g2, g3, g1_ld, g2_ld


def classify_regime(w: WallModel, tau_threshold: float = 2e-4,
                    eta_floor: float = 1e-2) -> Regime:
    """Asymptotic-regime diagnostic for a parameter set.

    Small tau_r with surviving viscosity is the diffusive (Kelvin-Voigt)
    limit, small tau_r and vanishing viscosity the elastic limit, E_inf = 0
    at finite tau_r the Maxwell wall, anything else plain SLS.
    """
    if w.tau_r < tau_threshold:
        eta_eff = w.eta if w.eta > 0 else w.tau_r * w.E0
        if eta_eff >= eta_floor:
            return Regime.DIFFUSIVE_LIMIT
        return Regime.ELASTIC_LIMIT
    if w.E_inf == 0.0:
        return Regime.MAXWELL
    return Regime.SLS


def quasilinear_matrix(state: CellState, w: WallModel, rho: float) -> np.ndarray:
    """System matrix of the homogeneous augmented equations in (A, Au, p)."""
    u = state.u
    return np.array([
        [0.0, 1.0, 0.0],
        [-u * u, 2.0 * u, state.A / rho],
        [0.0, w.E0 * transport_coeff(state.A, w), 0.0],
    ])
