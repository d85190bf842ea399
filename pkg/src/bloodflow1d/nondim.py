"""Dimensionless transformation of states and wall parameters.

The solver integrates the dimensionless form of the equations for every
scenario: with SI inputs the state variables span ~10 orders of magnitude
(areas ~1e-4, moduli ~1e6..1e8) and high-order reconstruction picks up
round-off fluctuations.  Scales follow the convention: length = domain
length, time = 1 s, density = 1050 kg/m^3, area = mean initial area, modulus
= mean over both initial Young-modulus fields, viscosity = modulus * time.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError


@dataclass(frozen=True)
class CharacteristicScales:
    L: float            # length scale [m]
    T: float            # time scale [s]
    rho: float          # density scale [kg/m^3]
    A: float            # area scale [m^2]
    E: float            # Young-modulus scale [Pa]

    def __post_init__(self):
        if min(self.L, self.T, self.rho, self.A, self.E) <= 0:
            raise ParameterError("all characteristic scales must be positive")

    @property
    def U(self) -> float:
        return self.L / self.T

    @property
    def eta(self) -> float:
        return self.E * self.T

    @property
    def pressure(self) -> float:
        return self.rho * self.U**2

    @property
    def flow(self) -> float:
        return self.A * self.U


def wall_reynolds(s: CharacteristicScales) -> float:
    """Reynolds-like number rho U L / eta built on the *wall* viscosity."""
    return s.rho * s.U * s.L / s.eta


def scales_from_initial(L: float, A_init, E0_init, E_inf_init,
                        T: float = 1.0, rho: float = 1050.0) -> CharacteristicScales:
    """Build scales from a scenario's initial fields.

    The modulus scale is the mean over the concatenation of the two initial
    Young-modulus fields (instantaneous and asymptotic).
    """
    A_init = np.asarray(A_init, dtype=float)
    E0_init = np.asarray(E0_init, dtype=float)
    E_inf_init = np.asarray(E_inf_init, dtype=float)
    if A_init.size == 0 or E0_init.size == 0:
        raise ParameterError("initial fields must be non-empty")
    return CharacteristicScales(
        L=L, T=T, rho=rho,
        A=float(np.mean(A_init)),
        E=float(np.mean(np.concatenate([np.ravel(E0_init), np.ravel(E_inf_init)]))),
    )


# Quantity kinds understood by the generic converters.  Pressure-like
# quantities (p, p0, and moduli when fed to the solver) scale with rho U^2;
# the modulus kind scales by the mean initial modulus.
_SCALE_OF = {
    "length": lambda s: s.L,
    "time": lambda s: s.T,
    "density": lambda s: s.rho,
    "area": lambda s: s.A,
    "velocity": lambda s: s.U,
    "flow": lambda s: s.flow,
    "pressure": lambda s: s.pressure,
    "modulus": lambda s: s.E,
    "viscosity": lambda s: s.eta,
}


def to_dimensionless(value, kind: str, s: CharacteristicScales):
    try:
        scale = _SCALE_OF[kind](s)
    except KeyError:
        raise ParameterError(f"unknown quantity kind {kind!r}") from None
    out = np.asarray(value, dtype=float) / scale
    return out if np.ndim(out) else float(out)


def from_dimensionless(value, kind: str, s: CharacteristicScales):
    try:
        scale = _SCALE_OF[kind](s)
    except KeyError:
        raise ParameterError(f"unknown quantity kind {kind!r}") from None
    out = np.asarray(value, dtype=float) * scale
    return out if np.ndim(out) else float(out)
