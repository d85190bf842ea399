import math

import numpy as np
import pytest

import bloodflow1d as bf
from bloodflow1d import (BoundaryMode, Grid1D, InletWaveform, MMHG, RcrCircuit,
                         VesselKind, WallModel)
from bloodflow1d.boundary import fill_ghosts, inlet_state, outlet_state
from bloodflow1d.errors import ParameterError
from bloodflow1d.mesh import FieldSet

RHO = 1050.0


def wall(A0=4.5e-4, E=0.76e6, p0=71 * MMHG, kind=VesselKind.ARTERY):
    return WallModel(A0=A0, h0=1.2e-3, E0=E, E_inf=E, eta=0.0, tau_r=0.0,
                     p0=p0, kind=kind, sls_tol=math.inf)


class TestWaveform:
    def test_halfsine_values(self):
        wf = InletWaveform(period=1.0, q_max=4e-4, t_systole=0.4)
        assert wf(0.2) == pytest.approx(4e-4)
        assert wf(0.0) == 0.0
        assert wf(0.5) == 0.0
        assert wf(1.2) == pytest.approx(wf(0.2))  # periodic extension

    def test_table_file(self, tmp_path):
        path = tmp_path / "wave.txt"
        t = np.linspace(0.0, 1.0, 11)
        q = np.sin(np.pi * t) * 1e-4
        np.savetxt(path, np.column_stack([t, q]))
        wf = InletWaveform.from_file(path)
        assert wf(0.5) == pytest.approx(1e-4, rel=1e-12)
        assert wf(0.25) == pytest.approx(np.interp(0.25, t, q), rel=1e-12)
        assert wf(1.35) == pytest.approx(wf(0.35), rel=1e-12)

    def test_table_validation(self, tmp_path):
        path = tmp_path / "bad.txt"
        np.savetxt(path, np.column_stack([[0.0, 0.0, 1.0], [0.0, 1.0, 0.0]]))
        with pytest.raises(ParameterError):
            InletWaveform.from_file(path)


class TestRcr:
    def test_validation(self):
        with pytest.raises(ParameterError):
            RcrCircuit(R1=-1.0, R2=1.0, C=1.0)

    def test_scaling_round_trip(self):
        rcr = RcrCircuit(R1=14.047e6, R2=111.67e6, C=14.238e-9, p_out=0.0,
                         p_C=5000.0)
        s = rcr.scaled(pressure_scale=60.0, flow_scale=8e-5, time_scale=1.0)
        assert s.R1 * 60.0 / 8e-5 == pytest.approx(14.047e6, rel=1e-12)
        assert s.p_C == pytest.approx(5000.0 / 60.0, rel=1e-12)
        # time constants are preserved
        assert s.R2 * s.C == pytest.approx(111.67e6 * 14.238e-9, rel=1e-12)


class TestInlet:
    def test_fixed_point(self):
        w = wall()
        A1, u1 = 4.5e-4, 0.4
        p1 = bf.elastic_pressure(A1, w)
        A, u, p = inlet_state(A1 * u1, A1, u1, p1, w, RHO)
        assert A == pytest.approx(A1, rel=1e-12)
        assert u == pytest.approx(u1, rel=1e-12)
        assert p == pytest.approx(p1, rel=1e-12)

    def test_at_rest_zero_inflow(self):
        w = wall()
        p1 = bf.elastic_pressure(w.A0, w)
        A, u, p = inlet_state(0.0, w.A0, 0.0, p1, w, RHO)
        assert A == pytest.approx(w.A0, rel=1e-12)
        assert u == 0.0
        assert p == pytest.approx(p1, rel=1e-12)

    def test_residuals_random_states(self):
        rng = np.random.default_rng(7)
        w = wall()
        for _ in range(200):
            A1 = w.A0 * rng.uniform(0.7, 1.4)
            u1 = rng.uniform(-0.5, 1.5)
            p1 = bf.elastic_pressure(A1, w) * rng.uniform(0.9, 1.1)
            q_in = rng.uniform(-1e-4, 5e-4)
            A, u, p = inlet_state(q_in, A1, u1, p1, w, RHO)
            scale = max(abs(q_in), w.A0 * bf.celerity(w.A0, w, RHO))
            # mass relation
            assert abs(A * u - q_in) <= 1e-12 * scale
            # acoustic invariant
            g_b = u - bf.invariant_integral(A, w, RHO)
            g_i = u1 - bf.invariant_integral(A1, w, RHO)
            assert abs(g_b - g_i) <= 1e-10 * max(1.0, abs(g_i))
            # contact-field relation
            lhs = p - (w.E_inf / w.W) * bf.strain(A / w.A0, w.kind)
            rhs = p1 - (w.E_inf / w.W) * bf.strain(A1 / w.A0, w.kind)
            assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))


class TestOutlet:
    RCR = dict(R1=14.047e6, R2=111.67e6, C=14.238e-9)

    def test_at_rest_fixed_point(self):
        w = wall()
        pN = bf.elastic_pressure(w.A0, w)
        rcr = RcrCircuit(**self.RCR, p_out=pN, p_C=pN)
        A, u, p, pC = outlet_state(rcr, 1e-4, w.A0, 0.0, pN, w, RHO)
        assert u == pytest.approx(0.0, abs=1e-12)
        assert A == pytest.approx(w.A0, rel=1e-12)
        assert p == pytest.approx(pN, rel=1e-12)

    def test_discrete_fixed_point_identity(self):
        # iterate against a frozen interior: at the fixed point the solve
        # satisfies p* = p_out + (R1 + R2) q* exactly
        w = wall()
        AN = 1.07 * w.A0
        pN = bf.elastic_pressure(AN, w)
        uN = 0.15
        rcr = RcrCircuit(**self.RCR, p_out=0.0, p_C=0.0)
        for _ in range(8000):
            A, u, p, _ = outlet_state(rcr, 1e-3, AN, uN, pN, w, RHO)
        q = A * u
        assert p == pytest.approx(rcr.p_out + (rcr.R1 + rcr.R2) * q, rel=1e-10)
        assert rcr.p_C == pytest.approx(rcr.p_out + rcr.R2 * q, rel=1e-10)

    def test_residuals_random_states(self):
        rng = np.random.default_rng(11)
        w = wall()
        for _ in range(200):
            AN = w.A0 * rng.uniform(0.8, 1.3)
            uN = rng.uniform(-0.2, 1.0)
            pN = bf.elastic_pressure(AN, w)
            rcr = RcrCircuit(**self.RCR, p_out=0.0,
                             p_C=rng.uniform(0.0, 1.3e4))
            dt = 10 ** rng.uniform(-5, -3)
            pC0 = rcr.p_C
            A, u, p, pC = outlet_state(rcr, dt, AN, uN, pN, w, RHO)
            scale = max(abs(p), abs(pN), w.E_inf / w.W)
            # R1 relation with the updated capacitor state
            assert abs(rcr.R1 * A * u - (p - pC)) <= 1e-12 * scale
            # explicit capacitor update
            pC_ref = pC0 + dt / (rcr.C * rcr.R1) * (p - pC0) \
                - dt / (rcr.C * rcr.R2) * (pC0 - rcr.p_out)
            assert pC == pytest.approx(pC_ref, rel=1e-12)
            # outgoing invariant and contact-field relation
            g_b = u + bf.invariant_integral(A, w, RHO)
            g_i = uN + bf.invariant_integral(AN, w, RHO)
            assert abs(g_b - g_i) <= 1e-10 * max(1.0, abs(g_i))
            lhs = p - (w.E_inf / w.W) * bf.strain(A / w.A0, w.kind)
            rhs = pN - (w.E_inf / w.W) * bf.strain(AN / w.A0, w.kind)
            assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))

    def test_commit_flag(self):
        w = wall()
        rcr = RcrCircuit(**self.RCR, p_out=0.0, p_C=500.0)
        outlet_state(rcr, 1e-3, w.A0, 0.1, bf.elastic_pressure(w.A0, w), w,
                     RHO, commit=False)
        assert rcr.p_C == 500.0


class TestFillGhosts:
    def _fields(self, periodic=False):
        g = Grid1D(L=0.24, Nx=12)
        n = g.ntot
        w = wall()
        A = np.full(n, w.A0) * (1 + 0.01 * np.arange(n) / n)
        state = {"A": A, "Au": A * 0.1, "p": np.full(n, 9.5e3)}
        params = {k: np.full(n, v) for k, v in
                  (("A0", w.A0), ("E0", w.E0), ("E_inf", w.E_inf),
                   ("eta", 0.0), ("p0", w.p0), ("tau_r", 0.0))}
        return FieldSet(g, VesselKind.ARTERY, 1.2e-3, RHO, state, params,
                        periodic=periodic)

    def test_periodic_wraps(self):
        f = self._fields(periodic=True)
        f.A[f.grid.interior] = np.arange(12, dtype=float) + 1
        fill_ghosts(f, BoundaryMode.PERIODIC)
        assert f.A[0] == 11.0 and f.A[1] == 12.0
        assert f.A[-2] == 1.0 and f.A[-1] == 2.0

    def test_transmissive_copies_edges(self):
        f = self._fields()
        fill_ghosts(f, BoundaryMode.TRANSMISSIVE)
        assert f.A[0] == f.A[2] and f.A[1] == f.A[2]
        assert f.A[-1] == f.A[-3]

    def test_physical_fixed_point_reproduces_interior(self):
        f = self._fields()
        f.A[:] = 4.5e-4
        f.Au[:] = 4.5e-4 * 0.2
        w = f.wall_model_at(2)
        f.p[:] = bf.elastic_pressure(4.5e-4, w)
        inlet = InletWaveform(period=1.0, q_max=4.5e-4 * 0.2, t_systole=1.0)
        # waveform value at t = 0.5 equals the interior flow
        rcr = RcrCircuit(R1=1e6, R2=1e8, C=1e-8, p_out=0.0, p_C=0.0)
        states = fill_ghosts(f, BoundaryMode.PHYSICAL, t_stage=0.5,
                             inlet=inlet, rcr=rcr, dt_stage=0.0)
        (A_in, u_in, p_in), _ = states
        assert A_in == pytest.approx(4.5e-4, rel=1e-10)
        assert u_in == pytest.approx(0.2, rel=1e-10)
        assert f.A[0] == pytest.approx(4.5e-4, rel=1e-10)

    def test_physical_requires_config(self):
        f = self._fields()
        with pytest.raises(ParameterError):
            fill_ghosts(f, BoundaryMode.PHYSICAL)
