"""Pure-numpy twins of the numba kernels (fallback backend).

Same arithmetic as ``_numba.py``, vectorised over interfaces/cells; the
parity tests hold the two backends together.
"""

import numpy as np

_GL3_S = (0.5 - np.sqrt(15.0) / 10.0, 0.5, 0.5 + np.sqrt(15.0) / 10.0)
_GL3_W = (5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0)
_GL2_XI = (-0.5 / np.sqrt(3.0), 0.5 / np.sqrt(3.0))


def weno3_faces(q, eps, qm, qp):
    dm = q[1:-1] - q[:-2]
    dp = q[2:] - q[1:-1]
    b0 = dm * dm
    b1 = dp * dp
    a0 = (1.0 / 3.0) / ((eps + b0) * (eps + b0))
    a1 = (2.0 / 3.0) / ((eps + b1) * (eps + b1))
    w0 = a0 / (a0 + a1)
    qp[1:-1] = q[1:-1] + 0.5 * (w0 * dm + (1.0 - w0) * dp)
    a0 = (2.0 / 3.0) / ((eps + b0) * (eps + b0))
    a1 = (1.0 / 3.0) / ((eps + b1) * (eps + b1))
    w0 = a0 / (a0 + a1)
    qm[1:-1] = q[1:-1] - 0.5 * (w0 * dm + (1.0 - w0) * dp)
    qm[0] = qp[0] = q[0]
    qm[-1] = qp[-1] = q[-1]


def _kappa(a, a0, e0, mexp, nexp, wcoef, wexp):
    alpha = a / a0
    if mexp == 0.5 and nexp == 0.0 and wexp == 0.5:  # arterial exponents
        return e0 * 0.5 * np.sqrt(alpha) / (wcoef * np.sqrt(a0) * a)
    wall = wcoef * a0**wexp
    return e0 * (mexp * alpha**mexp - nexp * alpha**nexp) / (wall * a)


def _subcell(qm, qp, qbar):
    b = qp - qm
    c = 3.0 * (qp + qm) - 6.0 * qbar
    a = qbar - c / 12.0
    return a, b, c


def row3_ops(A, Au, Am, Ap, Aum, Aup, A0m, A0p, E0m, E0p, A0, E0,
             mexp, nexp, wcoef, wexp, dx, ng, op3c):
    mtot = A.shape[0]
    lo = ng - 1
    hi = mtot - ng
    aL = Ap[lo:hi]
    a0L = A0p[lo:hi]
    e0L = E0p[lo:hi]
    dA = Am[lo + 1:hi + 1] - aL
    dAu = Aum[lo + 1:hi + 1] - Aup[lo:hi]
    dA0 = A0m[lo + 1:hi + 1] - a0L
    dE0 = E0m[lo + 1:hi + 1] - e0L
    acc = np.zeros_like(dA)
    for s, wg in zip(_GL3_S, _GL3_W):
        acc += wg * _kappa(aL + s * dA, a0L + s * dA0, e0L + s * dE0,
                           mexp, nexp, wcoef, wexp)
    cen3 = acc * dAu

    sl = slice(ng, mtot - ng)
    aA, bA, cA = _subcell(Am[sl], Ap[sl], A[sl])
    _, bAu, cAu = _subcell(Aum[sl], Aup[sl], Au[sl])
    aA0, bA0, cA0 = _subcell(A0m[sl], A0p[sl], A0[sl])
    aE0, bE0, cE0 = _subcell(E0m[sl], E0p[sl], E0[sl])
    in3 = np.zeros_like(bA)
    for xi in _GL2_XI:
        aq = aA + bA * xi + cA * xi * xi
        a0q = aA0 + bA0 * xi + cA0 * xi * xi
        e0q = aE0 + bE0 * xi + cE0 * xi * xi
        in3 += 0.5 * _kappa(aq, a0q, e0q, mexp, nexp, wcoef, wexp) \
            * (bAu + 2.0 * cAu * xi)
    op3c[sl] = (0.5 * cen3[:-1] + 0.5 * cen3[1:] + in3) / dx


def rows12_ops(A, Au, p, Am, Ap, Aum, Aup, pm, pp,
               A0m, A0p, E0m, E0p, A0, E0,
               mexp, nexp, wcoef, wexp, rho, dx, smax, ng,
               op1, op2, op3d):
    mtot = A.shape[0]
    lo = ng - 1
    hi = mtot - ng
    aL = Ap[lo:hi]
    auL = Aup[lo:hi]
    pL = pp[lo:hi]
    a0L = A0p[lo:hi]
    e0L = E0p[lo:hi]
    dA = Am[lo + 1:hi + 1] - aL
    dAu = Aum[lo + 1:hi + 1] - auL
    dp = pm[lo + 1:hi + 1] - pL
    dA0 = A0m[lo + 1:hi + 1] - a0L
    dE0 = E0m[lo + 1:hi + 1] - e0L

    cen1 = dAu
    cen2 = np.zeros_like(dA)
    dis1 = np.zeros_like(dA)
    dis2 = np.zeros_like(dA)
    dis3 = np.zeros_like(dA)
    for s, wg in zip(_GL3_S, _GL3_W):
        a = aL + s * dA
        au = auL + s * dAu
        a0 = a0L + s * dA0
        e0 = e0L + s * dE0
        u = au / a
        kap = _kappa(a, a0, e0, mexp, nexp, wcoef, wexp)
        cen2 += wg * (-u * u * dA + 2.0 * u * dAu + (a / rho) * dp)
        c = np.sqrt(a * kap / rho)
        k = rho * u * u / a
        det = 2.0 * c * (kap - k)
        scale = np.maximum(np.abs(kap), np.abs(k))
        bad = np.abs(det) <= 1e-14 * scale * np.maximum(c, 1e-30)
        if np.any(bad):
            return int(np.argmax(bad))
        lam1 = np.abs(u - c)
        lam3 = np.abs(u + c)
        floor = 1e-12 * np.maximum(lam1, lam3)
        lam1 = np.minimum(np.maximum(lam1, floor), smax)
        lam3 = np.minimum(np.maximum(lam3, floor), smax)
        l1 = (-k * (u + c) * dA - (kap - k) * dAu + (u + c) * dp) / det
        l3 = (k * (u - c) * dA + (kap - k) * dAu + (c - u) * dp) / det
        dis1 += wg * (lam1 * l1 + lam3 * l3)
        dis2 += wg * (lam1 * (u - c) * l1 + lam3 * (u + c) * l3)
        dis3 += wg * (lam1 * kap * l1 + lam3 * kap * l3)

    sl = slice(ng, mtot - ng)
    aA, bA, cA = _subcell(Am[sl], Ap[sl], A[sl])
    _, bp, cp = _subcell(pm[sl], pp[sl], p[sl])
    in2b = np.zeros_like(bA)
    for xi in _GL2_XI:
        aq = aA + bA * xi + cA * xi * xi
        in2b += 0.5 * (aq / rho) * (bp + 2.0 * cp * xi)
    in1 = Aup[sl] - Aum[sl]
    in2f = Aup[sl] * Aup[sl] / Ap[sl] - Aum[sl] * Aum[sl] / Am[sl]
    op1[sl] = (0.5 * (cen1[:-1] + dis1[:-1]) + 0.5 * (cen1[1:] - dis1[1:])
               + in1) / dx
    op2[sl] = (0.5 * (cen2[:-1] + dis2[:-1]) + 0.5 * (cen2[1:] - dis2[1:])
               + in2f + in2b) / dx
    op3d[sl] = (0.5 * dis3[:-1] - 0.5 * dis3[1:]) / dx
    return -1
