"""Plot-spec files: the same flat INI style as the solver's scenario configs.

A spec names input CSVs, the variables to draw, an optional overlay (exact
solution or comparison run) and the output image path:

    [plot]
    kind = profiles | hysteresis | timeseries | spacetime
    input = run_profile.csv[, more.csv ...]
    overlay = exact_profile.csv[, ...]        ; optional
    output = figure.png
    variables = Au, u, alpha, p               ; optional, kind-specific
    title = ...                               ; optional
"""

from __future__ import annotations

import configparser
import os
from dataclasses import dataclass


class SpecError(Exception):
    pass


@dataclass(frozen=True)
class PlotSpec:
    kind: str
    inputs: tuple
    output: str
    overlays: tuple = ()
    variables: tuple = ()
    title: str = ""

    def __post_init__(self):
        for path in self.inputs + self.overlays:
            if not os.path.exists(path):
                raise SpecError(f"input file does not exist: {path}")
        if not self.inputs:
            raise SpecError("plot spec needs at least one input file")


def _split(value: str) -> tuple:
    return tuple(v.strip() for v in value.split(",") if v.strip())


def read_spec(path) -> PlotSpec:
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    if not cp.read(path):
        raise SpecError(f"cannot read spec file {path}")
    if not cp.has_section("plot"):
        raise SpecError(f"spec file {path} has no [plot] section")
    sec = cp["plot"]
    kind = sec.get("kind", "").strip().lower()
    if kind not in ("profiles", "hysteresis", "timeseries", "spacetime"):
        raise SpecError(f"unknown plot kind {kind!r}")
    return PlotSpec(
        kind=kind,
        inputs=_split(sec.get("input", "")),
        overlays=_split(sec.get("overlay", "")),
        output=sec.get("output", "").strip(),
        variables=_split(sec.get("variables", "")),
        title=sec.get("title", "").strip(),
    )
