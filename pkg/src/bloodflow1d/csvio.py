"""CSV emission: profiles, probe series, space-time tables, metadata.

All values SI, shortest round-trip float formatting (parsing an emitted file
reproduces the arrays bit-exactly), deterministic ordering.
"""

from __future__ import annotations

import os

import numpy as np

from .errors import ParameterError

PROFILE_HEADER = ("x", "A", "Au", "u", "p", "alpha")
PROBE_HEADER = ("t", "A", "Au", "u", "p", "alpha")


def _fmt(v: float) -> str:
    return repr(float(v))


def _write_table(path: str, header, columns) -> None:
    n = len(columns[0])
    for col in columns:
        if len(col) != n:
            raise ParameterError("csv columns must share a length")
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for i in range(n):
            fh.write(",".join(_fmt(col[i]) for col in columns) + "\n")


def write_profile(path: str, data: dict) -> None:
    _write_table(path, PROFILE_HEADER, [data[k] for k in PROFILE_HEADER])


def write_probe(path: str, data: dict) -> None:
    _write_table(path, PROBE_HEADER, [data[k] for k in PROBE_HEADER])


def write_spacetime(path: str, t, x, fields: dict) -> None:
    """Long format: one row per (t, x) sample."""
    t = np.asarray(t)
    x = np.asarray(x)
    nt, nx = t.size, x.size
    cols = {k: np.asarray(v).reshape(nt, nx) for k, v in fields.items()}
    header = ("t", "x", "A", "Au", "u", "p", "alpha")
    out_cols = [np.repeat(t, nx), np.tile(x, nt)]
    out_cols += [cols[k].ravel() for k in header[2:]]
    _write_table(path, header, out_cols)


def read_table(path: str) -> dict:
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().strip().split(",")
        rows = [line.strip().split(",") for line in fh if line.strip()]
    cols = {name: np.array([float(r[j]) for r in rows])
            for j, name in enumerate(header)}
    return cols


def write_metadata(path: str, lines: dict) -> None:
    """Flat key = value sidecar with the fully resolved configuration."""
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        for key in lines:
            fh.write(f"{key} = {lines[key]}\n")
