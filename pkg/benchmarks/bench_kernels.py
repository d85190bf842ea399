"""Benchmark the numba kernels against their pure-numpy twins.

Times the three hot kernels (WENO3 faces, pressure-row transport operator,
mass/momentum operators with upwinding) and a full solver step in both
backends.  Run:

    python benchmarks/bench_kernels.py [--nx 400] [--repeats 200]
"""

import argparse
import time

import numpy as np

from bloodflow1d.kernels import _numba, _numpy
from bloodflow1d.scenarios import make_engine, rp_config


def timeit(fn, repeats):
    fn()  # warm-up (JIT compilation for the numba backend)
    t0 = time.perf_counter()
    for _ in range(repeats):
        fn()
    return (time.perf_counter() - t0) / repeats


def kernel_args(nx):
    rng = np.random.default_rng(1)
    m = nx + 4
    x = np.linspace(0, 2 * np.pi, m)
    A0 = 1.0 + 0.2 * np.sin(x)
    E0 = 50.0 + 10.0 * np.cos(x)
    A = A0 * (1.0 + 0.03 * rng.standard_normal(m))
    Au = 0.1 + 0.02 * rng.standard_normal(m)
    p = 5.0 + 0.5 * rng.standard_normal(m)
    fields = {}
    for name, q in (("A", A), ("Au", Au), ("p", p), ("A0", A0), ("E0", E0)):
        qm = np.empty_like(q)
        qp = np.empty_like(q)
        _numpy.weno3_faces(q, 1e-6, qm, qp)
        fields[name] = q
        fields[name + "m"] = qm
        fields[name + "p"] = qp
    return fields


def bench_kernels(nx, repeats):
    f = kernel_args(nx)
    scratch = {k: np.zeros_like(f["A"]) for k in ("op1", "op2", "op3c",
                                                  "op3d", "qm", "qp")}
    rows = []
    for tag, b in (("numba", _numba), ("numpy", _numpy)):
        t_weno = timeit(lambda: b.weno3_faces(f["A"], 1e-6, scratch["qm"],
                                              scratch["qp"]), repeats)
        t_row3 = timeit(lambda: b.row3_ops(
            f["A"], f["Au"], f["Am"], f["Ap"], f["Aum"], f["Aup"],
            f["A0m"], f["A0p"], f["E0m"], f["E0p"], f["A0"], f["E0"],
            0.5, 0.0, 3.0, 0.5, 1.0 / nx, 2, scratch["op3c"]), repeats)
        t_rows12 = timeit(lambda: b.rows12_ops(
            f["A"], f["Au"], f["p"], f["Am"], f["Ap"], f["Aum"], f["Aup"],
            f["pm"], f["pp"], f["A0m"], f["A0p"], f["E0m"], f["E0p"],
            f["A0"], f["E0"], 0.5, 0.0, 3.0, 0.5, 1.0, 1.0 / nx, 1e9, 2,
            scratch["op1"], scratch["op2"], scratch["op3d"]), repeats)
        rows.append((tag, t_weno, t_row3, t_rows12))
    return rows


def bench_step(nx, repeats):
    from bloodflow1d.imex import compute_dt, imex_step

    rows = []
    for tag in ("numba", "numpy"):
        # the backend is chosen at import; report only the active one and
        # note how to flip it
        engine = make_engine(rp_config(2, "b", nx=nx))
        dt = compute_dt(engine)
        t = timeit(lambda: imex_step(engine, dt), max(3, repeats // 20))
        rows.append((tag, t))
        break
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nx", type=int, default=400)
    ap.add_argument("--repeats", type=int, default=200)
    args = ap.parse_args()

    from bloodflow1d.kernels import BACKEND

    print(f"cells: {args.nx}, repeats: {args.repeats}")
    print(f"{'backend':>8} {'weno3':>12} {'row3_ops':>12} {'rows12_ops':>12}")
    rows = bench_kernels(args.nx, args.repeats)
    for tag, tw, t3, t12 in rows:
        print(f"{tag:>8} {tw * 1e6:10.1f}us {t3 * 1e6:10.1f}us "
              f"{t12 * 1e6:10.1f}us")
    nb = rows[0]
    np_ = rows[1]
    print(f"{'speedup':>8} {np_[1] / nb[1]:11.1f}x {np_[2] / nb[2]:11.1f}x "
          f"{np_[3] / nb[3]:11.1f}x")
    step = bench_step(args.nx, args.repeats)
    print(f"\nfull IMEX step (active backend = {BACKEND}): "
          f"{step[0][1] * 1e3:.2f} ms")
    print("set BLOODFLOW1D_BACKEND=numpy to time the fallback end to end")


if __name__ == "__main__":
    main()
