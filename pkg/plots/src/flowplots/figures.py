"""Figure builders over solver CSV output.

Read-only consumers: nothing here recomputes physics.  Output is
deterministic for identical inputs (fixed styles, no timestamps).
"""

from __future__ import annotations

import csv

import matplotlib
matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .specfile import PlotSpec, SpecError  # noqa: E402

MMHG = 133.322387415

_LABELS = {
    "A": ("area", "cm$^2$", 1e4),
    "Au": ("flow rate", "ml/s", 1e6),
    "u": ("velocity", "m/s", 1.0),
    "p": ("pressure", "mmHg", 1.0 / MMHG),
    "alpha": ("area ratio", "-", 1.0),
}


def read_csv(path) -> dict:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [row for row in reader if row]
    return {name: np.array([float(r[j]) for r in rows])
            for j, name in enumerate(header)}


def loop_area(A, p) -> float:
    """Signed shoelace area of the closed (A, p) loop; the dissipation per
    cycle up to sign convention."""
    A = np.asarray(A)
    p = np.asarray(p)
    return 0.5 * float(np.sum(A * np.roll(p, -1) - np.roll(A, -1) * p))


def _check_variables(data, variables, path):
    missing = [v for v in variables if v not in data]
    if missing:
        raise SpecError(f"variables {missing} not in {path} "
                        f"(header: {sorted(data)})")


def plot_profiles(spec: PlotSpec):
    """2x2 final-time profile panels with optional exact-solution overlay."""
    if not spec.variables:
        raise SpecError("profiles plot needs a non-empty variable list")
    data = read_csv(spec.inputs[0])
    _check_variables(data, ("x",) + spec.variables, spec.inputs[0])
    overlay = read_csv(spec.overlays[0]) if spec.overlays else None
    if overlay is not None:
        _check_variables(overlay, ("x",) + spec.variables, spec.overlays[0])
    n = len(spec.variables)
    ncols = 2 if n > 1 else 1
    nrows = (n + ncols - 1) // ncols
    fig, axes = plt.subplots(nrows, ncols, figsize=(4.2 * ncols, 3.2 * nrows),
                             squeeze=False)
    for k, var in enumerate(spec.variables):
        ax = axes[k // ncols][k % ncols]
        name, unit, scale = _LABELS.get(var, (var, "-", 1.0))
        if overlay is not None:
            ax.plot(overlay["x"], overlay[var] * scale, "k-", lw=1.0,
                    label="exact")
        ax.plot(data["x"], data[var] * scale, "o", ms=2.5, mfc="none",
                color="tab:red", label="numerical")
        ax.set_xlabel("x [m]")
        ax.set_ylabel(f"{name} [{unit}]")
        ax.legend(fontsize=7)
    for k in range(n, nrows * ncols):
        axes[k // ncols][k % ncols].set_visible(False)
    if spec.title:
        fig.suptitle(spec.title)
    fig.tight_layout()
    fig.savefig(spec.output, dpi=130, metadata={"Software": None})
    plt.close(fig)
    return spec.output


def plot_hysteresis(spec: PlotSpec):
    """Pressure-area loops per probe; overlays compare a second run."""
    names = ("U", "M", "D")
    n = len(spec.inputs)
    fig, axes = plt.subplots(1, n, figsize=(3.6 * n, 3.4), squeeze=False)
    areas = []
    for k, path in enumerate(spec.inputs):
        probe = read_csv(path)
        _check_variables(probe, ("A", "p"), path)
        ax = axes[0][k]
        if k < len(spec.overlays):
            other = read_csv(spec.overlays[k])
            ax.plot(other["A"] * 1e4, other["p"] / MMHG, "-", lw=0.9,
                    color="tab:blue", label="comparison")
        ax.plot(probe["A"] * 1e4, probe["p"] / MMHG, "-", lw=0.9,
                color="tab:red", label="run")
        area = loop_area(probe["A"], probe["p"])
        areas.append(area)
        label = names[k] if k < len(names) else str(k)
        ax.set_title(f"probe {label} (loop area {area:.2e} Pa m$^2$)",
                     fontsize=8)
        ax.set_xlabel("A [cm$^2$]")
        ax.set_ylabel("p [mmHg]")
        ax.legend(fontsize=7)
    if spec.title:
        fig.suptitle(spec.title)
    fig.tight_layout()
    fig.savefig(spec.output, dpi=130, metadata={"Software": None})
    plt.close(fig)
    return areas


def plot_timeseries(spec: PlotSpec):
    """Probe time histories, one panel per variable, one line per input."""
    variables = spec.variables or ("Au", "u", "alpha", "p")
    n = len(variables)
    fig, axes = plt.subplots(1, n, figsize=(3.4 * n, 3.0), squeeze=False)
    for path in spec.inputs:
        probe = read_csv(path)
        _check_variables(probe, ("t",) + tuple(variables), path)
        for k, var in enumerate(variables):
            name, unit, scale = _LABELS.get(var, (var, "-", 1.0))
            axes[0][k].plot(probe["t"], probe[var] * scale, lw=0.9)
            axes[0][k].set_xlabel("t [s]")
            axes[0][k].set_ylabel(f"{name} [{unit}]")
    if spec.title:
        fig.suptitle(spec.title)
    fig.tight_layout()
    fig.savefig(spec.output, dpi=130, metadata={"Software": None})
    plt.close(fig)
    return spec.output


def plot_spacetime(spec: PlotSpec):
    """Space-time maps from a long-format (t, x, fields) table."""
    variables = spec.variables or ("Au", "u", "alpha", "p")
    data = read_csv(spec.inputs[0])
    _check_variables(data, ("t", "x") + tuple(variables), spec.inputs[0])
    t = np.unique(data["t"])
    x = np.unique(data["x"])
    n = len(variables)
    fig, axes = plt.subplots(1, n, figsize=(3.6 * n, 3.2), squeeze=False)
    for k, var in enumerate(variables):
        name, unit, scale = _LABELS.get(var, (var, "-", 1.0))
        grid = (data[var] * scale).reshape(t.size, x.size)
        ax = axes[0][k]
        pc = ax.pcolormesh(x, t, grid, shading="nearest", cmap="viridis")
        fig.colorbar(pc, ax=ax, label=f"{name} [{unit}]")
        ax.set_xlabel("x [m]")
        ax.set_ylabel("t [s]")
    if spec.title:
        fig.suptitle(spec.title)
    fig.tight_layout()
    fig.savefig(spec.output, dpi=130, metadata={"Software": None})
    plt.close(fig)
    return spec.output


DISPATCH = {
    "profiles": plot_profiles,
    "hysteresis": plot_hysteresis,
    "timeseries": plot_timeseries,
    "spacetime": plot_spacetime,
}


def render(spec: PlotSpec):
    return DISPATCH[spec.kind](spec)
