"""Command-line entry point.

Subcommands:
  run <config.ini>     run a scenario config file
  rp <1..5>            published Riemann problems (--case a|b|c)
  accuracy             smooth convergence ladder (--closure sls|kv|el)
  stent                stented thoracic aorta case study (--no-stent)
"""

from __future__ import annotations

import argparse
import os
import sys

from .errors import ModelError

ENV_OUTDIR = "BLOODFLOW1D_OUTDIR"


def _out_dir(args) -> str:
    return args.out or os.environ.get(ENV_OUTDIR, ".")


def _add_common(p):
    p.add_argument("--nx", type=int, default=None, help="override cell count")
    p.add_argument("--tend", type=float, default=None,
                   help="override final time [s]")
    p.add_argument("--out", type=str, default=None,
                   help=f"output directory (default: ${ENV_OUTDIR} or cwd)")
    p.add_argument("--weno-eps", type=float, default=None,
                   help="WENO smoothness floor")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bloodflow1d", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a scenario config file")
    p_run.add_argument("config", type=str)
    _add_common(p_run)

    p_rp = sub.add_parser("rp", help="published Riemann problems")
    p_rp.add_argument("number", type=int, choices=range(1, 6))
    p_rp.add_argument("--case", choices=("a", "b", "c"), default="a")
    _add_common(p_rp)

    p_acc = sub.add_parser("accuracy", help="smooth convergence ladder")
    p_acc.add_argument("--closure", choices=("sls", "kv", "el"), default="sls")
    _add_common(p_acc)

    p_st = sub.add_parser("stent", help="stented thoracic aorta case study")
    p_st.add_argument("--no-stent", action="store_true",
                      help="run the healthy (stentless) configuration")
    p_st.add_argument("--cycles", type=int, default=10)
    _add_common(p_st)
    return ap


def _cmd_run(args) -> int:
    from dataclasses import replace

    from .configio import read_config
    from .csvio import write_metadata, write_probe, write_profile
    from .scenarios import config_metadata, make_engine, probe_cells
    from .simulation import run

    cfg = read_config(args.config)
    if args.nx:
        cfg = replace(cfg, nx=args.nx)
    if args.tend:
        cfg = replace(cfg, t_end=args.tend)
    if args.weno_eps:
        cfg = replace(cfg, weno_eps=args.weno_eps)
    engine = make_engine(cfg)
    cells = probe_cells(cfg)
    series = {k: [] for k in ("t", "A", "Au", "u", "p", "alpha")}

    def record(e):
        s = e.probe_sample(cells)
        for k in series:
            series[k].append(s[k])

    run(engine, cfg.t_end, on_step=record if cells else None)
    out = _out_dir(args)
    base = os.path.join(out, cfg.name)
    write_profile(base + "_profile.csv", engine.to_physical())
    if cells:
        import numpy as np
        for j, cell in enumerate(cells):
            data = {"t": np.array(series["t"])}
            for k in ("A", "Au", "u", "p", "alpha"):
                data[k] = np.array([row[j] for row in series[k]])
            write_probe(f"{base}_probe_{j}.csv", data)
    write_metadata(base + "_meta.ini", config_metadata(cfg, engine))
    print(f"{cfg.name}: t_end={cfg.t_end} s, wrote {base}_profile.csv")
    return 0


def _cmd_rp(args) -> int:
    from .scenarios import run_rp

    res = run_rp(args.number, case=args.case, nx=args.nx or 100,
                 t_end=args.tend, out_dir=_out_dir(args),
                 weno_eps=args.weno_eps or 1e-14)
    name = res["config"].name
    if "drift" in res:
        d = res["drift"]
        print(f"{name}: rel-L2 drift A={d['A']:.3e} Au={d['Au']:.3e} "
              f"p={d['p']:.3e}")
    if "l1" in res:
        print(f"{name}: waves={res['waves']}, L1(A) vs exact = "
              f"{res['l1']['A']:.4e}")
    print(f"{name}: TV(p) = {res['tv_p']:.6e}")
    return 0


def _cmd_accuracy(args) -> int:
    from .scenarios import run_accuracy_suite

    levels = (15, 45, 135, 405)
    res = run_accuracy_suite(args.closure, nx_levels=levels,
                             t_end=args.tend or 0.25, out_dir=_out_dir(args))
    print(f"accuracy ({args.closure}): relative L2 vs 3x-refined run")
    print(f"{'var':>4} {'nx':>5} {'L2':>12} {'order':>7}")
    for q in ("A", "Au", "p"):
        for k, nx in enumerate(res["nx"]):
            order = "" if k == 0 else f"{res['orders'][q][k - 1]:7.2f}"
            print(f"{q:>4} {nx:>5} {res['l2'][q][k]:12.3e} {order}")
    return 0


def _cmd_stent(args) -> int:
    from .scenarios import run_stent

    res = run_stent(stented=not args.no_stent, nx=args.nx or 24,
                    cycles=args.cycles, out_dir=_out_dir(args))
    name = res["config"].name
    areas = ", ".join(f"{a:.4e}" for a in res["loop_areas"])
    peaks = ", ".join(f"{pr['p'].max() / 133.322387415:.1f}"
                      for pr in res["probes"])
    print(f"{name}: {res['cycles']} cycles; peak p [mmHg] at (U,M,D) = {peaks}")
    print(f"{name}: last-cycle hysteresis loop areas (U,M,D) = {areas}")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {"run": _cmd_run, "rp": _cmd_rp, "accuracy": _cmd_accuracy,
                "stent": _cmd_stent}
    try:
        return handlers[args.command](args)
    except ModelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
