"""Planar engagement simulator.

Integrates the cartesian point-mass kinematics xdot = v cos(chi),
ydot = v sin(chi) with fixed-step RK4 under either

  * ideal course dynamics  - chi equals the commanded course at every RK4
    stage, so the closed loop realises the reduced error dynamics directly;
  * first-order dynamics   - chidot = sat(k_chi * wrap(chi_cmd - chi),
    omega_max), integrated alongside the position.

The polar pair (d, gamma) is refreshed from (x, y) each step, which avoids
the r -> 0 stiffness of integrating the polar form near the origin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .angles import wrap
from .arcsine import ArcsineParams, arcsine_heading
from .curves import StandoffCurve
from .errors import NonFinite, NonPositiveRange, RangeCollapse
from .glass import GuidanceParams, glass_heading

_RANGE_FLOOR = 1e-6  # m; below this the polar geometry is singular

MODE_IDEAL = "ideal"
MODE_FIRST_ORDER = "first_order"

TRACE_COLUMNS = ("t", "x", "y", "d", "gamma", "chi", "lambda", "e", "chidot", "kappa")


@dataclass(frozen=True)
class EngagementState:
    """Planar engagement variables: cartesian position with polar shadow."""

    x: float
    y: float
    d: float
    gamma: float
    chi: float
    t: float = 0.0

    def __post_init__(self):
        if not self.d > 0.0:
            raise ValueError(f"range must be > 0 (got {self.d})")
        r = math.hypot(self.x, self.y)
        if abs(self.d - r) > 1e-9 * (1.0 + self.d):
            raise ValueError(f"d = {self.d} inconsistent with hypot(x, y) = {r}")
        if abs(wrap(self.gamma - math.atan2(self.y, self.x))) > 1e-9:
            raise ValueError("gamma inconsistent with atan2(y, x)")

    @classmethod
    def from_xy(cls, x: float, y: float, chi: float, t: float = 0.0) -> "EngagementState":
        d = math.hypot(x, y)
        return cls(x=x, y=y, d=d, gamma=math.atan2(y, x), chi=wrap(chi), t=t)


@dataclass(frozen=True)
class CourseChannel:
    """Course response model: ideal pass-through or rate-saturated first order."""

    mode: str = MODE_IDEAL
    k_chi: float = 50.0
    omega_max: float = 0.5

    def __post_init__(self):
        if self.mode not in (MODE_IDEAL, MODE_FIRST_ORDER):
            raise ValueError(f"unknown channel mode {self.mode!r}")
        if not self.k_chi > 0.0:
            raise ValueError(f"k_chi must be > 0 (got {self.k_chi})")
        if not self.omega_max > 0.0:
            raise ValueError(f"omega_max must be > 0 (got {self.omega_max})")

    def rate(self, chi: float, chi_cmd: float) -> float:
        """Saturated first-order course rate toward the command."""
        raw = self.k_chi * wrap(chi_cmd - chi)
        if raw > self.omega_max:
            return self.omega_max
        if raw < -self.omega_max:
            return -self.omega_max
        return raw


@dataclass
class SimTrace:
    """Time-indexed engagement record with constant step."""

    t: np.ndarray
    x: np.ndarray
    y: np.ndarray
    d: np.ndarray
    gamma: np.ndarray
    chi: np.ndarray
    lam: np.ndarray
    e: np.ndarray
    chidot: np.ndarray
    kappa: np.ndarray
    meta: dict = field(default_factory=dict)
    tube_entry_time_measured: Optional[float] = None

    def __len__(self) -> int:
        return len(self.t)

    def to_csv(self, path) -> None:
        """Write the trace with full round-trip float precision."""
        cols = (self.t, self.x, self.y, self.d, self.gamma, self.chi,
                self.lam, self.e, self.chidot, self.kappa)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(",".join(TRACE_COLUMNS) + "\n")
            for row in zip(*cols):
                fh.write(",".join(repr(float(v)) for v in row) + "\n")


def step_kinematics(state: EngagementState, chi_applied: float, v_g: float,
                    dt: float) -> EngagementState:
    """Advance the kinematics one RK4 step with the course held fixed.

    With chi held over the step the velocity field is constant, so the four
    RK4 increments coincide and the update is the exact straight line.
    """
    if not dt > 0.0:
        raise ValueError(f"dt must be > 0 (got {dt})")
    x = state.x + v_g * math.cos(chi_applied) * dt
    y = state.y + v_g * math.sin(chi_applied) * dt
    d = math.hypot(x, y)
    if d < _RANGE_FLOOR:
        raise RangeCollapse(f"range {d:.3e} m fell below the {_RANGE_FLOOR} m floor")
    return EngagementState(x=x, y=y, d=d, gamma=math.atan2(y, x),
                           chi=wrap(chi_applied), t=state.t + dt)


def _rk4_ideal(heading, v_g, x, y, dt):
    def f(px, py):
        h = heading(px, py)
        return v_g * math.cos(h), v_g * math.sin(h)

    k1x, k1y = f(x, y)
    k2x, k2y = f(x + 0.5 * dt * k1x, y + 0.5 * dt * k1y)
    k3x, k3y = f(x + 0.5 * dt * k2x, y + 0.5 * dt * k2y)
    k4x, k4y = f(x + dt * k3x, y + dt * k3y)
    sixth = dt / 6.0
    return (x + sixth * (k1x + 2.0 * (k2x + k3x) + k4x),
            y + sixth * (k1y + 2.0 * (k2y + k3y) + k4y))


def _rk4_first_order(heading, channel, v_g, x, y, chi, dt):
    def f(px, py, pchi):
        rate = channel.rate(pchi, heading(px, py))
        return v_g * math.cos(pchi), v_g * math.sin(pchi), rate

    k1 = f(x, y, chi)
    k2 = f(x + 0.5 * dt * k1[0], y + 0.5 * dt * k1[1], chi + 0.5 * dt * k1[2])
    k3 = f(x + 0.5 * dt * k2[0], y + 0.5 * dt * k2[1], chi + 0.5 * dt * k2[2])
    k4 = f(x + dt * k3[0], y + dt * k3[1], chi + dt * k3[2])
    sixth = dt / 6.0
    return (x + sixth * (k1[0] + 2.0 * (k2[0] + k3[0]) + k4[0]),
            y + sixth * (k1[1] + 2.0 * (k2[1] + k3[1]) + k4[1]),
            chi + sixth * (k1[2] + 2.0 * (k2[2] + k3[2]) + k4[2]))


def simulate(heading: Callable[[float, float], float], curve: StandoffCurve,
             params: GuidanceParams, channel: CourseChannel,
             x0: float, y0: float, *, chi0: Optional[float] = None,
             dt: float = 0.01, t_final: float = 60.0, dwell: float = 1.0,
             meta: Optional[dict] = None) -> SimTrace:
    """Run one engagement and capture the full trace.

    heading(x, y) is the commanded-course law.  Ideal mode applies it at
    every integrator stage; first-order mode integrates the saturated
    course channel from chi0 (defaulting to the initial command).  The run
    stops at t_final or once |e| <= params.eps has held for `dwell`
    seconds; the first tube crossing is measured by linear interpolation
    between the bracketing samples.
    """
    if not dt > 0.0:
        raise ValueError(f"dt must be > 0 (got {dt})")
    if not t_final > 0.0:
        raise ValueError(f"t_final must be > 0 (got {t_final})")
    v_g, eps = params.v_g, params.eps
    ideal = channel.mode == MODE_IDEAL

    x, y = float(x0), float(y0)
    try:
        chi = heading(x, y) if (ideal or chi0 is None) else float(chi0)
    except NonPositiveRange as exc:
        raise RangeCollapse(str(exc)) from exc

    n_max = int(round(t_final / dt))
    cols = {k: [] for k in ("t", "x", "y", "d", "gamma", "chi", "lam", "e", "chidot")}
    held = 0.0
    for i in range(n_max + 1):
        t = i * dt
        if not (math.isfinite(x) and math.isfinite(y) and math.isfinite(chi)):
            raise NonFinite(f"non-finite state at t = {t:.3f} s")
        d = math.hypot(x, y)
        if d < _RANGE_FLOOR:
            raise RangeCollapse(f"range {d:.3e} m fell below the floor at t = {t:.3f} s")
        gamma = math.atan2(y, x)
        if ideal:
            chi = heading(x, y)
            rate = math.nan  # filled from finite differences below
        else:
            rate = channel.rate(chi, heading(x, y))
        e = d - curve.radius_at(gamma)
        cols["t"].append(t)
        cols["x"].append(x)
        cols["y"].append(y)
        cols["d"].append(d)
        cols["gamma"].append(gamma)
        cols["chi"].append(wrap(chi))
        cols["lam"].append(wrap(chi - gamma))
        cols["e"].append(e)
        cols["chidot"].append(rate)

        held = held + dt if abs(e) <= eps else 0.0
        if held >= dwell or i == n_max:
            break
        try:
            if ideal:
                x, y = _rk4_ideal(heading, v_g, x, y, dt)
            else:
                x, y, chi = _rk4_first_order(heading, channel, v_g, x, y, chi, dt)
        except NonPositiveRange as exc:
            raise RangeCollapse(str(exc)) from exc

    arrays = {k: np.asarray(v, dtype=float) for k, v in cols.items()}
    chidot = arrays["chidot"]
    if ideal:
        # the logged chi is the commanded course; differentiate it along
        # the trajectory at the integrator step
        chidot = np.empty_like(arrays["chi"])
        if len(chidot) > 1:
            chidot[:-1] = wrap(np.diff(arrays["chi"])) / dt
            chidot[-1] = chidot[-2]
        else:
            chidot[:] = 0.0
    trace = SimTrace(
        t=arrays["t"], x=arrays["x"], y=arrays["y"], d=arrays["d"],
        gamma=arrays["gamma"], chi=arrays["chi"], lam=arrays["lam"],
        e=arrays["e"], chidot=chidot, kappa=chidot / v_g,
        meta=dict(meta or {}),
    )
    trace.tube_entry_time_measured = measure_tube_entry(trace, eps)
    return trace


def measure_tube_entry(trace: SimTrace, eps: float) -> Optional[float]:
    """First time |e| <= eps, interpolated between the bracketing samples.

    Returns None when the trace never enters the tube.
    """
    if len(trace) == 0:
        raise ValueError("empty trace")
    ae = np.abs(trace.e)
    inside = np.flatnonzero(ae <= eps)
    if inside.size == 0:
        return None
    i = int(inside[0])
    if i == 0:
        return float(trace.t[0])
    e_prev, e_here = ae[i - 1], ae[i]
    frac = (e_prev - eps) / (e_prev - e_here)
    return float(trace.t[i - 1] + frac * (trace.t[i] - trace.t[i - 1]))


def max_turn_rate(trace: SimTrace) -> float:
    """Largest row-wise |chidot| over the trace."""
    if len(trace) < 2:
        raise ValueError("need at least two rows to assess the turn rate")
    return float(np.max(np.abs(trace.chidot)))


def build_heading(law: str, curve: StandoffCurve, params: GuidanceParams,
                  arcsine: Optional[ArcsineParams] = None) -> Callable[[float, float], float]:
    """Commanded-course callable for the requested law."""
    if law == "glass":
        return lambda px, py: glass_heading(px, py, curve, params)
    if law == "arcsine":
        if arcsine is None:
            raise ValueError("arcsine law needs ArcsineParams")
        return lambda px, py: arcsine_heading(px, py, arcsine)
    raise ValueError(f"unknown law {law!r}")


def run_scenario(cfg) -> SimTrace:
    """Run a validated ScenarioConfig and return its trace.

    For the arcsine law with no explicit gain, the gain is matched to the
    tanh law's initial heading (outside starts only).
    """
    from .arcsine import match_arcsine_gain  # local import keeps config layering flat

    channel = CourseChannel(mode=cfg.channel_mode, k_chi=cfg.k_chi,
                            omega_max=cfg.guidance.omega_max)
    arcsine = None
    k_d = cfg.k_d
    if cfg.law == "arcsine":
        r_d = cfg.curve.radius
        if k_d is None:
            k_d = match_arcsine_gain(math.hypot(cfg.x0, cfg.y0), r_d, cfg.guidance.k_g)
        arcsine = ArcsineParams(k_d=k_d, r_d=r_d, normalized=cfg.normalized)
    heading = build_heading(cfg.law, cfg.curve, cfg.guidance, arcsine)
    chi0 = None if cfg.chi0_deg is None else math.radians(cfg.chi0_deg)
    meta = {
        "name": cfg.name, "law": cfg.law, "k_G": cfg.guidance.k_g,
        "direction": cfg.guidance.direction, "V_g": cfg.guidance.v_g,
        "eps": cfg.guidance.eps, "omega_max": cfg.guidance.omega_max,
        "channel": cfg.channel_mode, "k_chi": cfg.k_chi,
        "curve": repr(cfg.curve), "x0": cfg.x0, "y0": cfg.y0,
        "chi0_deg": cfg.chi0_deg, "dt": cfg.dt, "t_final": cfg.t_final,
        "dwell": cfg.dwell,
    }
    if k_d is not None:
        meta["k_D"] = k_d
    return simulate(heading, cfg.curve, cfg.guidance, channel, cfg.x0, cfg.y0,
                    chi0=chi0, dt=cfg.dt, t_final=cfg.t_final, dwell=cfg.dwell,
                    meta=meta)
