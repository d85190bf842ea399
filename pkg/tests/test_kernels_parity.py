"""The numba kernels and their pure-numpy twins must agree to round-off."""

import numpy as np
import pytest

from bloodflow1d.kernels import _numba, _numpy

NG = 2
RNG = np.random.default_rng(20240817)


def _random_fields(m=37, jumpy=False):
    A0 = 1.0 + 0.2 * np.sin(np.linspace(0, 2 * np.pi, m))
    E0 = 50.0 + 10.0 * np.cos(np.linspace(0, 2 * np.pi, m))
    A = A0 * (1.0 + 0.1 * RNG.standard_normal(m) * 0.3)
    Au = 0.1 + 0.05 * RNG.standard_normal(m)
    p = 5.0 + 0.5 * RNG.standard_normal(m)
    if jumpy:
        A0[m // 2:] *= 2.0
        E0[m // 2:] *= 8.0
        A[m // 2:] *= 1.8
        p[m // 2:] += 3.0
    return [np.ascontiguousarray(x) for x in (A, Au, p, A0, E0)]


def _faces(q, eps, backend):
    qm = np.empty_like(q)
    qp = np.empty_like(q)
    backend.weno3_faces(q, eps, qm, qp)
    return qm, qp


@pytest.mark.parametrize("jumpy", [False, True])
@pytest.mark.parametrize("eps", [1e-6, 1e-14])
def test_weno_faces_parity(jumpy, eps):
    A, Au, p, A0, E0 = _random_fields(jumpy=jumpy)
    for q in (A, Au, p):
        m_nb = _faces(q, eps, _numba)
        m_np = _faces(q, eps, _numpy)
        for a, b in zip(m_nb, m_np):
            np.testing.assert_allclose(a, b, rtol=1e-13, atol=1e-300)


@pytest.mark.parametrize("jumpy", [False, True])
def test_ops_parity(jumpy):
    A, Au, p, A0, E0 = _random_fields(jumpy=jumpy)
    eps = 1e-6
    args = {}
    for name, q in (("A", A), ("Au", Au), ("p", p), ("A0", A0), ("E0", E0)):
        args[name] = q
        args[name + "m"], args[name + "p"] = _faces(q, eps, _numba)
    mexp, nexp = 0.5, 0.0
    wcoef, wexp = 3.0, 0.5
    rho, dx, smax = 1.0, 0.02, 1e6

    out = {}
    for tag, backend in (("nb", _numba), ("np", _numpy)):
        op3c = np.zeros_like(A)
        backend.row3_ops(args["A"], args["Au"], args["Am"], args["Ap"],
                         args["Aum"], args["Aup"], args["A0m"], args["A0p"],
                         args["E0m"], args["E0p"], args["A0"], args["E0"],
                         mexp, nexp, wcoef, wexp, dx, NG, op3c)
        op1 = np.zeros_like(A)
        op2 = np.zeros_like(A)
        op3d = np.zeros_like(A)
        status = backend.rows12_ops(
            args["A"], args["Au"], args["p"], args["Am"], args["Ap"],
            args["Aum"], args["Aup"], args["pm"], args["pp"],
            args["A0m"], args["A0p"], args["E0m"], args["E0p"],
            args["A0"], args["E0"], mexp, nexp, wcoef, wexp, rho, dx, smax,
            NG, op1, op2, op3d)
        assert status == -1
        out[tag] = (op3c, op1, op2, op3d)

    for a, b in zip(out["nb"], out["np"]):
        scale = np.abs(a).max() + 1e-300
        np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-12 * scale)


def test_ops_parity_vein_exponents():
    A, Au, p, A0, E0 = _random_fields()
    eps = 1e-6
    args = {}
    for name, q in (("A", A), ("Au", Au), ("p", p), ("A0", A0), ("E0", E0)):
        args[name] = q
        args[name + "m"], args[name + "p"] = _faces(q, eps, _numba)
    mexp, nexp = 10.0, -1.5
    wcoef, wexp = 12.0, 1.5
    rho, dx, smax = 1.0, 0.02, 1e6
    res = {}
    for tag, backend in (("nb", _numba), ("np", _numpy)):
        op3c = np.zeros_like(A)
        backend.row3_ops(args["A"], args["Au"], args["Am"], args["Ap"],
                         args["Aum"], args["Aup"], args["A0m"], args["A0p"],
                         args["E0m"], args["E0p"], args["A0"], args["E0"],
                         mexp, nexp, wcoef, wexp, dx, NG, op3c)
        res[tag] = op3c
    np.testing.assert_allclose(res["nb"], res["np"], rtol=1e-12,
                               atol=1e-12 * np.abs(res["nb"]).max())
