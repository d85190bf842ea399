"""Numba-compiled hot kernels: WENO3 faces and the path-conservative ops.

The numpy twin in ``_numpy.py`` must stay arithmetically identical; the
parity test suite compares them to near machine precision.

Grid convention: arrays carry ``ng`` ghost cells per side; interfaces are
indexed j = 0..N (between cells ng-1+j and ng+j).  The fluctuation split is
D+- = 1/2 (central +- dissipation), with D+ applied to the cell right of an
interface and D- to the cell left of it.  In-cell integrals use the unique
per-cell quadratic matching the two WENO face traces and the cell average,
so the O(dx^3) face-reconstruction errors cancel between the interface
fluctuations and the in-cell term (third order hinges on this pairing).
"""

import numpy as np
from numba import njit

# 3-point Gauss-Legendre on [0, 1] (interface path integrals)
_S0 = 0.5 - np.sqrt(15.0) / 10.0
_S1 = 0.5
_S2 = 0.5 + np.sqrt(15.0) / 10.0
_W0 = 5.0 / 18.0
_W1 = 8.0 / 18.0
_W2 = 5.0 / 18.0
# 2-point Gauss-Legendre on [-1/2, 1/2] (in-cell integrals)
_XI0 = -0.5 / np.sqrt(3.0)
_XI1 = 0.5 / np.sqrt(3.0)


@njit(cache=True)
def weno3_faces(q, eps, qm, qp):
    m = q.shape[0]
    for i in range(1, m - 1):
        dm = q[i] - q[i - 1]
        dp = q[i + 1] - q[i]
        b0 = dm * dm
        b1 = dp * dp
        a0 = (1.0 / 3.0) / ((eps + b0) * (eps + b0))
        a1 = (2.0 / 3.0) / ((eps + b1) * (eps + b1))
        w0 = a0 / (a0 + a1)
        qp[i] = q[i] + 0.5 * (w0 * dm + (1.0 - w0) * dp)
        a0 = (2.0 / 3.0) / ((eps + b0) * (eps + b0))
        a1 = (1.0 / 3.0) / ((eps + b1) * (eps + b1))
        w0 = a0 / (a0 + a1)
        qm[i] = q[i] - 0.5 * (w0 * dm + (1.0 - w0) * dp)
    qm[0] = q[0]
    qp[0] = q[0]
    qm[m - 1] = q[m - 1]
    qp[m - 1] = q[m - 1]


@njit(cache=True, inline="always")
def _kappa(a, a0, e0, mexp, nexp, wcoef, wexp):
    alpha = a / a0
    if mexp == 0.5 and nexp == 0.0 and wexp == 0.5:  # arterial exponents
        return e0 * 0.5 * np.sqrt(alpha) / (wcoef * np.sqrt(a0) * a)
    wall = wcoef * a0**wexp
    return e0 * (mexp * alpha**mexp - nexp * alpha**nexp) / (wall * a)


@njit(cache=True)
def row3_ops(A, Au, Am, Ap, Aum, Aup, A0m, A0p, E0m, E0p, A0, E0,
             mexp, nexp, wcoef, wexp, dx, ng, op3c):
    """Centred discrete E0*G(A)*d(Au)/dx (pressure-transport row, no upwinding).

    Independent of the pressure field, so it can feed the per-cell implicit
    relaxation solve before p is known at the stage.
    """
    mtot = A.shape[0]
    nifc = mtot - 2 * ng + 1
    cen3 = np.empty(nifc)
    for j in range(nifc):
        i = ng - 1 + j
        aL = Ap[i]
        auL = Aup[i]
        a0L = A0p[i]
        e0L = E0p[i]
        dA = Am[i + 1] - aL
        dAu = Aum[i + 1] - auL
        dA0 = A0m[i + 1] - a0L
        dE0 = E0m[i + 1] - e0L
        acc = 0.0
        acc += _W0 * _kappa(aL + _S0 * dA, a0L + _S0 * dA0, e0L + _S0 * dE0,
                            mexp, nexp, wcoef, wexp)
        acc += _W1 * _kappa(aL + _S1 * dA, a0L + _S1 * dA0, e0L + _S1 * dE0,
                            mexp, nexp, wcoef, wexp)
        acc += _W2 * _kappa(aL + _S2 * dA, a0L + _S2 * dA0, e0L + _S2 * dE0,
                            mexp, nexp, wcoef, wexp)
        cen3[j] = acc * dAu

    inv_dx = 1.0 / dx
    for i in range(ng, mtot - ng):
        j = i - ng
        bA = Ap[i] - Am[i]
        cA = 3.0 * (Ap[i] + Am[i]) - 6.0 * A[i]
        aA = A[i] - cA / 12.0
        bAu = Aup[i] - Aum[i]
        cAu = 3.0 * (Aup[i] + Aum[i]) - 6.0 * Au[i]
        bA0 = A0p[i] - A0m[i]
        cA0 = 3.0 * (A0p[i] + A0m[i]) - 6.0 * A0[i]
        aA0 = A0[i] - cA0 / 12.0
        bE0 = E0p[i] - E0m[i]
        cE0 = 3.0 * (E0p[i] + E0m[i]) - 6.0 * E0[i]
        aE0 = E0[i] - cE0 / 12.0
        in3 = 0.0
        for g in range(2):
            xi = _XI0 if g == 0 else _XI1
            aq = aA + bA * xi + cA * xi * xi
            a0q = aA0 + bA0 * xi + cA0 * xi * xi
            e0q = aE0 + bE0 * xi + cE0 * xi * xi
            in3 += 0.5 * _kappa(aq, a0q, e0q, mexp, nexp, wcoef, wexp) \
                * (bAu + 2.0 * cAu * xi)
        op3c[i] = (0.5 * cen3[j] + 0.5 * cen3[j + 1] + in3) * inv_dx


@njit(cache=True)
def rows12_ops(A, Au, p, Am, Ap, Aum, Aup, pm, pp,
               A0m, A0p, E0m, E0p, A0, E0,
               mexp, nexp, wcoef, wexp, rho, dx, smax, ng,
               op1, op2, op3d):
    """Mass/momentum rows (full DOT upwinding) + pressure-row dissipation.

    Dissipation eigenvalues are capped at `smax` and floored at
    1e-12*max|lambda|; the contact eigenvalue stays exactly zero.  Returns -1
    on success, else the interface index whose path produced a singular
    eigenvector matrix (u = +-c resonance or c = 0).
    """
    mtot = A.shape[0]
    nifc = mtot - 2 * ng + 1
    cen1 = np.empty(nifc)
    cen2 = np.empty(nifc)
    dis1 = np.empty(nifc)
    dis2 = np.empty(nifc)
    dis3 = np.empty(nifc)

    for j in range(nifc):
        i = ng - 1 + j
        aL = Ap[i]
        auL = Aup[i]
        pL = pp[i]
        a0L = A0p[i]
        e0L = E0p[i]
        dA = Am[i + 1] - aL
        dAu = Aum[i + 1] - auL
        dp = pm[i + 1] - pL
        dA0 = A0m[i + 1] - a0L
        dE0 = E0m[i + 1] - e0L
        c2s = 0.0
        d1s = 0.0
        d2s = 0.0
        d3s = 0.0
        for g in range(3):
            if g == 0:
                s = _S0
                wg = _W0
            elif g == 1:
                s = _S1
                wg = _W1
            else:
                s = _S2
                wg = _W2
            a = aL + s * dA
            au = auL + s * dAu
            pq = pL + s * dp
            a0 = a0L + s * dA0
            e0 = e0L + s * dE0
            u = au / a
            kap = _kappa(a, a0, e0, mexp, nexp, wcoef, wexp)
            c2s += wg * (-u * u * dA + 2.0 * u * dAu + (a / rho) * dp)
            c = np.sqrt(a * kap / rho)
            k = rho * u * u / a
            det = 2.0 * c * (kap - k)
            scale = abs(kap) if abs(kap) > abs(k) else abs(k)
            if abs(det) <= 1e-14 * scale * (c if c > 1e-30 else 1e-30):
                return j
            lam1 = abs(u - c)
            lam3 = abs(u + c)
            lmax = lam1 if lam1 > lam3 else lam3
            floor = 1e-12 * lmax
            if lam1 < floor:
                lam1 = floor
            if lam3 < floor:
                lam3 = floor
            if lam1 > smax:
                lam1 = smax
            if lam3 > smax:
                lam3 = smax
            l1 = (-k * (u + c) * dA - (kap - k) * dAu + (u + c) * dp) / det
            l3 = (k * (u - c) * dA + (kap - k) * dAu + (c - u) * dp) / det
            d1s += wg * (lam1 * l1 + lam3 * l3)
            d2s += wg * (lam1 * (u - c) * l1 + lam3 * (u + c) * l3)
            d3s += wg * (lam1 * kap * l1 + lam3 * kap * l3)
        cen1[j] = dAu
        cen2[j] = c2s
        dis1[j] = d1s
        dis2[j] = d2s
        dis3[j] = d3s

    inv_dx = 1.0 / dx
    for i in range(ng, mtot - ng):
        j = i - ng
        bA = Ap[i] - Am[i]
        cA = 3.0 * (Ap[i] + Am[i]) - 6.0 * A[i]
        aA = A[i] - cA / 12.0
        bp = pp[i] - pm[i]
        cp = 3.0 * (pp[i] + pm[i]) - 6.0 * p[i]
        in2b = 0.0
        for g in range(2):
            xi = _XI0 if g == 0 else _XI1
            aq = aA + bA * xi + cA * xi * xi
            in2b += 0.5 * (aq / rho) * (bp + 2.0 * cp * xi)
        in1 = Aup[i] - Aum[i]
        in2f = Aup[i] * Aup[i] / Ap[i] - Aum[i] * Aum[i] / Am[i]
        op1[i] = (0.5 * (cen1[j] + dis1[j]) + 0.5 * (cen1[j + 1] - dis1[j + 1])
                  + in1) * inv_dx
        op2[i] = (0.5 * (cen2[j] + dis2[j]) + 0.5 * (cen2[j + 1] - dis2[j + 1])
                  + in2f + in2b) * inv_dx
        op3d[i] = (0.5 * dis3[j] - 0.5 * dis3[j + 1]) * inv_dx
    return -1
