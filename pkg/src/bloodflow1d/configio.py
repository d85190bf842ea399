"""INI scenario files: flat key-value sections, fixed units per key.

Units follow the published tables so values can be transcribed verbatim:
areas mm^2, pressures mmHg, Young moduli MPa, wall viscosities kPa s,
lengths m, times s, flows m^3/s.  Resistances MPa s/m^3, compliances
m^3/GPa.
"""

from __future__ import annotations

import configparser
import math

from .boundary import BoundaryMode
from .constitutive import MMHG, VesselKind
from .errors import ParameterError
from .mesh import RegionSpec, SmoothSpec
from .reconstruction import DEFAULT_EPS
from .scenarios import RcrSpec, SimConfig, WaveformSpec


def _region_from_section(sec) -> RegionSpec:
    p = sec.get("p_mmHg", None)
    return RegionSpec(
        A0=sec.getfloat("A0_mm2") * 1e-6,
        E0=sec.getfloat("E0_MPa") * 1e6,
        E_inf=sec.getfloat("Einf_MPa") * 1e6,
        eta=sec.getfloat("eta_kPas") * 1e3,
        p0=sec.getfloat("p0_mmHg") * MMHG,
        A=sec.getfloat("A_mm2") * 1e-6,
        u=sec.getfloat("u_ms"),
        p=None if p in (None, "", "law") else float(p) * MMHG,
        tau_r=sec.getfloat("tau_r_s"),
    )


def _region_to_dict(rs: RegionSpec) -> dict:
    out = {
        "A0_mm2": repr(rs.A0 * 1e6),
        "A_mm2": repr(rs.A * 1e6),
        "u_ms": repr(rs.u),
        "p0_mmHg": repr(rs.p0 / MMHG),
        "Einf_MPa": repr(rs.E_inf * 1e-6),
        "E0_MPa": repr(rs.E0 * 1e-6),
        "eta_kPas": repr(rs.eta * 1e-3),
        "tau_r_s": repr(rs.tau_r),
    }
    out["p_mmHg"] = "law" if rs.p is None else repr(rs.p / MMHG)
    return out


def read_config(path) -> SimConfig:
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    if not cp.read(path):
        raise ParameterError(f"cannot read config file {path}")
    try:
        grid = cp["grid"]
        wall = cp["wall"]
        time_sec = cp["time"]
    except KeyError as exc:
        raise ParameterError(f"config {path} missing section {exc}") from exc
    kind = VesselKind(wall.get("kind", "artery").strip().lower())
    num = cp["numerics"] if cp.has_section("numerics") else {}
    bnd = cp["boundary"] if cp.has_section("boundary") else {}
    mode = BoundaryMode(bnd.get("mode", "transmissive").strip().lower()) \
        if bnd else BoundaryMode.TRANSMISSIVE

    regions = ()
    smooth = None
    init = cp["init"] if cp.has_section("init") else {}
    init_mode = init.get("mode", "piecewise").strip().lower() if init else "piecewise"
    L = grid.getfloat("length_m")
    if init_mode == "piecewise":
        x0 = cp["init"].getfloat("x0_m")
        regions = ((0.0, x0, _region_from_section(cp["left"])),
                   (x0, L, _region_from_section(cp["right"])))
    elif init_mode == "regions":
        i = 0
        acc = []
        while cp.has_section(f"region{i}"):
            sec = cp[f"region{i}"]
            acc.append((sec.getfloat("x_lo_m"), sec.getfloat("x_hi_m"),
                        _region_from_section(sec)))
            i += 1
        if not acc:
            raise ParameterError("init mode 'regions' needs [region0] ...")
        regions = tuple(acc)
    elif init_mode == "smooth":
        s = cp["smooth"]
        smooth = SmoothSpec(
            A_mean=s.getfloat("A_mean_cm2") * 1e-4,
            A_amp=s.getfloat("A_amp_cm2") * 1e-4,
            p0_mean=s.getfloat("p0_mean_kPa") * 1e3,
            p0_amp=s.getfloat("p0_amp_Pa"),
            E0_mean=s.getfloat("E0_mean_MPa") * 1e6,
            E_inf_mean=s.getfloat("Einf_mean_MPa") * 1e6,
            E_amp=s.getfloat("E_amp_MPa") * 1e6,
            Au0=s.getfloat("Au0_m3s"),
            eta=s.getfloat("eta_kPas") * 1e3,
            tau_r=s.getfloat("tau_r_s"),
        )
    else:
        raise ParameterError(f"unknown init mode {init_mode!r}")

    waveform = None
    if bnd and bnd.get("waveform", ""):
        waveform = WaveformSpec(
            kind=bnd.get("waveform").strip().lower(),
            q_max=bnd.getfloat("q_max_m3s", 4.2e-4),
            t_systole=bnd.getfloat("t_systole_s", 0.3),
            period=bnd.getfloat("period_s", 0.955),
            path=bnd.get("waveform_file", None),
        )
    rcr = None
    if cp.has_section("rcr"):
        rc = cp["rcr"]
        rcr = RcrSpec(
            R1=rc.getfloat("R1_MPasm3") * 1e6,
            R2=rc.getfloat("R2_MPasm3") * 1e6,
            C=rc.getfloat("C_m3GPa") * 1e-9,
            p_out=rc.getfloat("p_out_mmHg", 0.0) * MMHG,
            p_C0=rc.getfloat("p_C0_mmHg", 0.0) * MMHG,
        )
    probes = ()
    if cp.has_section("output") and cp["output"].get("probes_m", ""):
        probes = tuple(float(v) for v in
                       cp["output"]["probes_m"].replace(",", " ").split())

    return SimConfig(
        name=cp.get("scenario", "name", fallback="custom"),
        L=L, nx=grid.getint("nx"),
        rho=cp.getfloat("fluid", "rho_kgm3", fallback=1050.0),
        h0=wall.getfloat("h0_mm") * 1e-3, kind=kind,
        t_end=time_sec.getfloat("t_end_s"),
        mode=mode, regions=regions, smooth=smooth,
        cfl=time_sec.getfloat("cfl", 0.9), nu=time_sec.getfloat("nu", 0.5),
        weno_eps=float(num.get("weno_eps", DEFAULT_EPS)) if num else DEFAULT_EPS,
        waveform=waveform, rcr=rcr, probes=probes,
    )


def write_config(cfg: SimConfig, path) -> None:
    cp = configparser.ConfigParser()
    cp["scenario"] = {"name": cfg.name}
    cp["grid"] = {"length_m": repr(cfg.L), "nx": str(cfg.nx)}
    cp["fluid"] = {"rho_kgm3": repr(cfg.rho)}
    cp["wall"] = {"kind": cfg.kind.value, "h0_mm": repr(cfg.h0 * 1e3)}
    cp["time"] = {"t_end_s": repr(cfg.t_end), "cfl": repr(cfg.cfl),
                  "nu": repr(cfg.nu)}
    cp["numerics"] = {"weno_eps": repr(cfg.weno_eps)}
    cp["boundary"] = {"mode": cfg.mode.value}
    if cfg.waveform is not None:
        cp["boundary"].update({
            "waveform": cfg.waveform.kind,
            "q_max_m3s": repr(cfg.waveform.q_max),
            "t_systole_s": repr(cfg.waveform.t_systole),
            "period_s": repr(cfg.waveform.period),
        })
        if cfg.waveform.path:
            cp["boundary"]["waveform_file"] = cfg.waveform.path
    if cfg.smooth is not None:
        s = cfg.smooth
        cp["init"] = {"mode": "smooth"}
        cp["smooth"] = {
            "A_mean_cm2": repr(s.A_mean * 1e4), "A_amp_cm2": repr(s.A_amp * 1e4),
            "p0_mean_kPa": repr(s.p0_mean * 1e-3), "p0_amp_Pa": repr(s.p0_amp),
            "E0_mean_MPa": repr(s.E0_mean * 1e-6),
            "Einf_mean_MPa": repr(s.E_inf_mean * 1e-6),
            "E_amp_MPa": repr(s.E_amp * 1e-6),
            "Au0_m3s": repr(s.Au0), "eta_kPas": repr(s.eta * 1e-3),
            "tau_r_s": repr(s.tau_r),
        }
    elif len(cfg.regions) == 2 and math.isclose(cfg.regions[0][1],
                                                cfg.regions[1][0]):
        cp["init"] = {"mode": "piecewise", "x0_m": repr(cfg.regions[0][1])}
        cp["left"] = _region_to_dict(cfg.regions[0][2])
        cp["right"] = _region_to_dict(cfg.regions[1][2])
    else:
        cp["init"] = {"mode": "regions"}
        for i, (lo, hi, rs) in enumerate(cfg.regions):
            d = {"x_lo_m": repr(lo), "x_hi_m": repr(hi)}
            d.update(_region_to_dict(rs))
            cp[f"region{i}"] = d
    if cfg.rcr is not None:
        cp["rcr"] = {
            "R1_MPasm3": repr(cfg.rcr.R1 * 1e-6),
            "R2_MPasm3": repr(cfg.rcr.R2 * 1e-6),
            "C_m3GPa": repr(cfg.rcr.C * 1e9),
            "p_out_mmHg": repr(cfg.rcr.p_out / MMHG),
            "p_C0_mmHg": repr(cfg.rcr.p_C0 / MMHG),
        }
    if cfg.probes:
        cp["output"] = {"probes_m": " ".join(repr(p) for p in cfg.probes)}
    with open(path, "w", encoding="ascii") as fh:
        cp.write(fh)
