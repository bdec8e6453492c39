"""Scenario configuration files.

Plain-text INI documents, parsed strictly: unknown sections or keys are
rejected, every value is typed and checked against the invariants of the
type it feeds, and errors name the offending `section.key`.  Human-entered
angles are degrees; everything becomes radians at this boundary.

Planar scenario schema (defaults shown where a key may be omitted):

    [vehicle]
    V_g = 20.0            # ground speed, m/s
    channel = ideal       # ideal | first_order
    k_chi = 50.0          # course-loop gain, 1/s (first_order)
    omega_max = 0.5       # turn-rate limit, rad/s

    [curve]
    curve = circle        # circle | ellipse | lame
    radius = 200.0        # circle only
    semi_major = 300.0    # ellipse / lame
    semi_minor = 200.0    # ellipse / lame
    exponent = 4.0        # lame only, >= 2

    [guidance]
    law = glass           # glass | arcsine
    k_G = 0.02            # shaping gain, 1/m
    direction = ccw       # ccw | cw
    eps = 0.05            # settling tube half-width, m
    k_D = -1.439          # arcsine only; omit to match it from k_G
    normalized = true     # arcsine error variant

    [initial]
    x0 = 450.0
    y0 = -250.0
    chi0 = ideal          # ideal | initial course in degrees
    x0_alt = 45.0         # optional second start (sweep reports)
    y0_alt = -25.0

    [sim]
    dt = 0.01
    t_final = 60.0
    dwell = 1.0           # seconds |e| <= eps must hold before stopping

A 6DOF file holds a single [quad] section whose keys default to the
nominal mini-quadrotor parameter set; see QUAD_KEYS below.
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

from .curves import Circle, Ellipse, Lame, StandoffCurve
from .errors import ConfigError
from .glass import GuidanceParams
from .quadrotor import InnerLoopParams, OuterLoopParams, QuadrotorParams, QuadSimConfig

_REQUIRED = object()


@dataclass(frozen=True)
class ScenarioConfig:
    """One planar engagement scenario, fully validated."""

    curve: StandoffCurve
    guidance: GuidanceParams
    x0: float
    y0: float
    law: str = "glass"
    k_d: Optional[float] = None          # arcsine gain; None -> matched from k_G
    normalized: bool = True
    channel_mode: str = "ideal"
    k_chi: float = 50.0
    chi0_deg: Optional[float] = None     # None -> initial command ("ideal")
    alt_start: Optional[Tuple[float, float]] = None
    dt: float = 0.01
    t_final: float = 60.0
    dwell: float = 1.0
    name: str = field(default="scenario", compare=False)


_SCENARIO_KEYS = {
    "vehicle": {"V_g", "channel", "k_chi", "omega_max"},
    "curve": {"curve", "radius", "semi_major", "semi_minor", "exponent"},
    "guidance": {"law", "k_G", "direction", "eps", "k_D", "normalized"},
    "initial": {"x0", "y0", "chi0", "x0_alt", "y0_alt"},
    "sim": {"dt", "t_final", "dwell"},
}

QUAD_KEYS = {
    # rigid body
    "m", "I_x", "I_y", "I_z", "l", "b", "d", "J_r", "Omega_max", "g",
    # outer loop
    "k_chi", "omega_max", "tau_chi", "V_ref", "k_v", "a_max", "k_rad",
    "phi_max", "theta_max", "r_d", "z_d", "k_G", "direction",
    # inner loops
    "att_kp", "att_kd", "yaw_kp", "yaw_kd", "alt_kp", "alt_kd", "climb_accel_max",
    # run setup
    "x0", "y0", "z0", "psi0", "t_final", "dt_control", "substeps",
}


def _read_ini(text: str) -> configparser.ConfigParser:
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str  # keys are case-sensitive (k_G, V_g, ...)
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config: {exc}") from exc
    return cp


def _check_keys(cp: configparser.ConfigParser, allowed: dict) -> None:
    for section in cp.sections():
        if section not in allowed:
            raise ConfigError(f"unknown section [{section}]")
        for key in cp.options(section):
            if key not in allowed[section]:
                raise ConfigError(f"{section}.{key}: unknown key")


def _get(cp, section, key, conv, default=_REQUIRED):
    if not cp.has_section(section) or not cp.has_option(section, key):
        if default is _REQUIRED:
            raise ConfigError(f"{section}.{key}: missing required key")
        return default
    raw = cp.get(section, key).strip()
    try:
        return conv(raw)
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"{section}.{key}: cannot parse {raw!r}") from exc


def _as_bool(raw: str) -> bool:
    low = raw.lower()
    if low in ("true", "yes", "on", "1"):
        return True
    if low in ("false", "no", "off", "0"):
        return False
    raise ValueError(raw)


def _positive(value, path):
    if not value > 0.0:
        raise ConfigError(f"{path}: must be > 0 (got {value})")
    return value


def _parse_curve(cp) -> StandoffCurve:
    kind = _get(cp, "curve", "curve", str, "circle").lower()
    if kind == "circle":
        return Circle(_positive(_get(cp, "curve", "radius", float), "curve.radius"))
    if kind == "ellipse":
        return Ellipse(
            _positive(_get(cp, "curve", "semi_major", float), "curve.semi_major"),
            _positive(_get(cp, "curve", "semi_minor", float), "curve.semi_minor"),
        )
    if kind == "lame":
        exponent = _get(cp, "curve", "exponent", float)
        if exponent < 2.0:
            raise ConfigError(f"curve.exponent: must be >= 2 (got {exponent})")
        return Lame(
            _positive(_get(cp, "curve", "semi_major", float), "curve.semi_major"),
            _positive(_get(cp, "curve", "semi_minor", float), "curve.semi_minor"),
            exponent,
        )
    raise ConfigError(f"curve.curve: unknown curve {kind!r}")


def parse_scenario(text: str, name: str = "scenario") -> ScenarioConfig:
    """Parse and validate a planar scenario document."""
    cp = _read_ini(text)
    _check_keys(cp, _SCENARIO_KEYS)

    curve = _parse_curve(cp)

    law = _get(cp, "guidance", "law", str, "glass").lower()
    if law not in ("glass", "arcsine"):
        raise ConfigError(f"guidance.law: unknown law {law!r}")
    if law == "arcsine" and not isinstance(curve, Circle):
        raise ConfigError("guidance.law: the arcsine baseline is defined for circles only")

    k_g = _positive(_get(cp, "guidance", "k_G", float, 0.02), "guidance.k_G")
    direction_raw = _get(cp, "guidance", "direction", str, "ccw").lower()
    if direction_raw in ("ccw", "+1", "1"):
        direction = 1
    elif direction_raw in ("cw", "-1"):
        direction = -1
    else:
        raise ConfigError(f"guidance.direction: expected ccw|cw (got {direction_raw!r})")
    eps = _positive(_get(cp, "guidance", "eps", float, 0.05), "guidance.eps")
    k_d = _get(cp, "guidance", "k_D", float, None)
    normalized = _get(cp, "guidance", "normalized", _as_bool, True)

    v_g = _positive(_get(cp, "vehicle", "V_g", float, 20.0), "vehicle.V_g")
    channel = _get(cp, "vehicle", "channel", str, "ideal").lower()
    if channel not in ("ideal", "first_order"):
        raise ConfigError(f"vehicle.channel: expected ideal|first_order (got {channel!r})")
    k_chi = _positive(_get(cp, "vehicle", "k_chi", float, 50.0), "vehicle.k_chi")
    omega_max = _positive(_get(cp, "vehicle", "omega_max", float, 0.5), "vehicle.omega_max")

    x0 = _get(cp, "initial", "x0", float)
    y0 = _get(cp, "initial", "y0", float)
    if math.hypot(x0, y0) <= 0.0:
        raise ConfigError("initial.x0: start must not sit on the origin")
    chi0_raw = _get(cp, "initial", "chi0", str, "ideal")
    if chi0_raw.lower() == "ideal":
        chi0_deg = None
    else:
        try:
            chi0_deg = float(chi0_raw)
        except ValueError as exc:
            raise ConfigError(f"initial.chi0: expected 'ideal' or degrees (got {chi0_raw!r})") from exc
    x0_alt = _get(cp, "initial", "x0_alt", float, None)
    y0_alt = _get(cp, "initial", "y0_alt", float, None)
    if (x0_alt is None) != (y0_alt is None):
        raise ConfigError("initial.x0_alt: x0_alt and y0_alt must be given together")
    alt_start = (x0_alt, y0_alt) if x0_alt is not None else None

    dt = _positive(_get(cp, "sim", "dt", float, 0.01), "sim.dt")
    t_final = _positive(_get(cp, "sim", "t_final", float, 60.0), "sim.t_final")
    dwell = _get(cp, "sim", "dwell", float, 1.0)
    if dwell < 0.0:
        raise ConfigError(f"sim.dwell: must be >= 0 (got {dwell})")

    guidance = GuidanceParams(k_g=k_g, direction=direction, v_g=v_g,
                              omega_max=omega_max, eps=eps)
    return ScenarioConfig(
        curve=curve, guidance=guidance, x0=x0, y0=y0, law=law, k_d=k_d,
        normalized=normalized, channel_mode=channel, k_chi=k_chi,
        chi0_deg=chi0_deg, alt_start=alt_start, dt=dt, t_final=t_final,
        dwell=dwell, name=name,
    )


def serialize_scenario(cfg: ScenarioConfig) -> str:
    """Render a scenario back to config text (inverse of parse_scenario)."""
    lines = ["[vehicle]",
             f"V_g = {cfg.guidance.v_g!r}",
             f"channel = {cfg.channel_mode}",
             f"k_chi = {cfg.k_chi!r}",
             f"omega_max = {cfg.guidance.omega_max!r}",
             "",
             "[curve]"]
    if isinstance(cfg.curve, Circle):
        lines += ["curve = circle", f"radius = {cfg.curve.radius!r}"]
    elif isinstance(cfg.curve, Ellipse):
        lines += ["curve = ellipse",
                  f"semi_major = {cfg.curve.semi_major!r}",
                  f"semi_minor = {cfg.curve.semi_minor!r}"]
    else:
        lines += ["curve = lame",
                  f"semi_major = {cfg.curve.semi_major!r}",
                  f"semi_minor = {cfg.curve.semi_minor!r}",
                  f"exponent = {cfg.curve.exponent!r}"]
    lines += ["",
              "[guidance]",
              f"law = {cfg.law}",
              f"k_G = {cfg.guidance.k_g!r}",
              f"direction = {'ccw' if cfg.guidance.direction == 1 else 'cw'}",
              f"eps = {cfg.guidance.eps!r}"]
    if cfg.k_d is not None:
        lines.append(f"k_D = {cfg.k_d!r}")
    lines.append(f"normalized = {'true' if cfg.normalized else 'false'}")
    lines += ["",
              "[initial]",
              f"x0 = {cfg.x0!r}",
              f"y0 = {cfg.y0!r}",
              f"chi0 = {'ideal' if cfg.chi0_deg is None else repr(cfg.chi0_deg)}"]
    if cfg.alt_start is not None:
        lines += [f"x0_alt = {cfg.alt_start[0]!r}", f"y0_alt = {cfg.alt_start[1]!r}"]
    lines += ["",
              "[sim]",
              f"dt = {cfg.dt!r}",
              f"t_final = {cfg.t_final!r}",
              f"dwell = {cfg.dwell!r}",
              ""]
    return "\n".join(lines)


def load_scenario(path) -> ScenarioConfig:
    """Read and validate a scenario file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    import os
    name = os.path.splitext(os.path.basename(str(path)))[0]
    return parse_scenario(text, name=name)


def with_gain(cfg: ScenarioConfig, k_g: float, name: Optional[str] = None) -> ScenarioConfig:
    """Copy a scenario with a different shaping gain."""
    out = replace(cfg, guidance=replace(cfg.guidance, k_g=k_g))
    return replace(out, name=name) if name is not None else out


def parse_quad(text: str) -> QuadSimConfig:
    """Parse a [quad] document; omitted keys take the nominal defaults."""
    cp = _read_ini(text)
    for section in cp.sections():
        if section != "quad":
            raise ConfigError(f"unknown section [{section}] (expected [quad])")
        for key in cp.options(section):
            if key not in QUAD_KEYS:
                raise ConfigError(f"quad.{key}: unknown key")

    def fget(key, default, positive=True):
        val = _get(cp, "quad", key, float, default)
        if positive and not val > 0.0:
            raise ConfigError(f"quad.{key}: must be > 0 (got {val})")
        return val

    quad = QuadrotorParams(
        m=fget("m", 0.24), i_x=fget("I_x", 2.3e-3), i_y=fget("I_y", 2.3e-3),
        i_z=fget("I_z", 4.0e-3), l=fget("l", 0.20), b=fget("b", 3.0e-6),
        d=fget("d", 1.0e-7), j_r=fget("J_r", 2.0e-5),
        omega_max=fget("Omega_max", 600.0), g=fget("g", 9.81),
    )
    direction_raw = _get(cp, "quad", "direction", str, "ccw").lower()
    if direction_raw in ("ccw", "+1", "1"):
        direction = 1
    elif direction_raw in ("cw", "-1"):
        direction = -1
    else:
        raise ConfigError(f"quad.direction: expected ccw|cw (got {direction_raw!r})")
    phi_max = fget("phi_max", 40.0)
    theta_max = fget("theta_max", 40.0)
    if not (phi_max < 90.0 and theta_max < 90.0):
        raise ConfigError("quad.phi_max: tilt limits must be below 90 degrees")
    outer = OuterLoopParams(
        k_chi=fget("k_chi", 3.0), omega_max=fget("omega_max", 0.8),
        tau_chi=fget("tau_chi", 0.6), v_ref=fget("V_ref", 2.0),
        k_v=fget("k_v", 2.5), a_max=fget("a_max", 8.0), k_rad=fget("k_rad", 0.8),
        phi_max=math.radians(phi_max), theta_max=math.radians(theta_max),
        r_d=fget("r_d", 20.0), z_d=fget("z_d", 10.0), k_g=fget("k_G", 0.08),
        direction=direction,
    )
    inner = InnerLoopParams(
        att_kp=fget("att_kp", 144.0), att_kd=fget("att_kd", 21.6),
        yaw_kp=fget("yaw_kp", 36.0), yaw_kd=fget("yaw_kd", 12.0),
        alt_kp=fget("alt_kp", 4.0), alt_kd=fget("alt_kd", 4.0),
        climb_accel_max=fget("climb_accel_max", 5.0),
    )
    psi0_deg = _get(cp, "quad", "psi0", float, None)
    substeps = _get(cp, "quad", "substeps", int, 10)
    if substeps < 1:
        raise ConfigError(f"quad.substeps: must be >= 1 (got {substeps})")
    return QuadSimConfig(
        quad=quad, outer=outer, inner=inner,
        x0=_get(cp, "quad", "x0", float, 0.0),
        y0=_get(cp, "quad", "y0", float, -5.0),
        z0=_get(cp, "quad", "z0", float, 0.0),
        psi0=None if psi0_deg is None else math.radians(psi0_deg),
        t_final=fget("t_final", 100.0),
        dt_control=fget("dt_control", 0.01),
        substeps=substeps,
    )


def load_quad(path) -> QuadSimConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    return parse_quad(text)
