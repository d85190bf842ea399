import math

import numpy as np

from bloodflow1d import Grid1D, SmoothSpec, VesselKind, WallModel
from bloodflow1d.constitutive import area_from_pressure
from bloodflow1d.mesh import FieldSet
from bloodflow1d.mesh import init_smooth_periodic
from bloodflow1d.simulation import Engine


def smooth_engine(tau, E0_mean, eta, nx=50, Au_amp=0.0, E_inf_mean=8e5,
                  prepared=False):
    """Accuracy-style periodic engine with optional flow modulation."""
    spec = SmoothSpec(A_mean=5e-4, A_amp=1e-4, p0_mean=5e3, p0_amp=500.0,
                      E0_mean=E0_mean, E_inf_mean=E_inf_mean, E_amp=0.2e6,
                      Au0=5e-5, eta=eta, tau_r=tau)
    g = Grid1D(L=1.0, Nx=nx)
    f = init_smooth_periodic(spec, g, VesselKind.ARTERY, 1.5e-3, 1050.0)
    if Au_amp:
        f.Au[:] = 5e-5 * (1.0 + Au_amp * np.sin(2 * np.pi * g.centers_full()))
    e = Engine(f)
    if prepared:
        e.prepare_pressure()
    return e


def uniform_engine(A0=math.pi * 1e-4, h0=1e-3, E0=21000.0, E_inf=None,
                   tau=0.0, eta=0.0, p0=0.0, u=0.0, p_off=0.0, nx=10, L=1.0,
                   rho=1050.0):
    """Spatially uniform fields; p = F(A0) + p_off."""
    E_inf = E0 if E_inf is None else E_inf
    g = Grid1D(L=L, Nx=nx)
    n = g.ntot
    state = {"A": np.full(n, A0), "Au": np.full(n, A0 * u),
             "p": np.full(n, p0 + p_off)}
    params = {"A0": np.full(n, A0), "E0": np.full(n, E0),
              "E_inf": np.full(n, E_inf), "eta": np.full(n, eta),
              "p0": np.full(n, p0), "tau_r": np.full(n, tau)}
    f = FieldSet(g, VesselKind.ARTERY, h0, rho, state, params, periodic=True)
    return Engine(f)


def random_steady_engine(seed, nx=32, p_star=12000.0):
    """Blood-at-rest state over random per-cell parameter jumps.

    u = 0, p constant, A from the tube-law inverse cell by cell: the exact
    stationary solution family of the augmented system.
    """
    rng = np.random.default_rng(seed)
    g = Grid1D(L=0.2, Nx=nx)
    n = g.ntot
    A0 = rng.uniform(2e-4, 6e-4, n)
    E0 = rng.uniform(2e6, 2e7, n)
    ratio = rng.uniform(0.5, 0.95, n)
    E_inf = E0 * ratio
    p0 = rng.uniform(8000.0, 11000.0, n)
    tau = 5e-4
    eta = tau * E0**2 / (E0 - E_inf)
    A = np.empty(n)
    for i in range(n):
        w = WallModel(A0=A0[i], h0=0.3e-3, E0=E0[i], E_inf=E_inf[i],
                      eta=eta[i], tau_r=tau, p0=p0[i], sls_tol=1e-6)
        A[i] = area_from_pressure(p_star, w)
    state = {"A": A, "Au": np.zeros(n), "p": np.full(n, p_star)}
    params = {"A0": A0, "E0": E0, "E_inf": E_inf, "eta": eta, "p0": p0,
              "tau_r": np.full(n, tau)}
    f = FieldSet(g, VesselKind.ARTERY, 0.3e-3, 1050.0, state, params,
                 periodic=False)
    return Engine(f)

