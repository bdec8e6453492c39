"""Six-DOF quadrotor embedding of the look-angle guidance law.

Rigid-body model: cross-configuration quadrotor with Euler angles (ZYX),
thrust U1 along the body z axis, moments (U2, U3, U4) about roll/pitch/yaw,
inertia cross-coupling and rotor gyroscopic terms scaled by J_r with net
rotor speed Omega_r = O2 + O4 - O1 - O3.  z is up; gravity acts along -z.

Control cascade per step (default 100 Hz, rigid body sub-stepped at 1 kHz):

    planar (d, gamma, e)  ->  commanded course  ->  wrap-aware command
    filter  ->  rate-saturated course channel  ->  velocity reference with
    radial correction  ->  norm-clamped acceleration  ->  tilt commands and
    yaw sync (psi_cmd = chi)  ->  inner PD loops  ->  rotor mixing with
    physical clamps  ->  RK4 rigid-body integration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from .angles import wrap
from .curves import Circle
from .errors import NonFinite
from .glass import GuidanceParams, glass_heading

QUAD_TRACE_COLUMNS = ("t", "x", "y", "z", "phi", "theta", "psi",
                      "U1", "U2", "U3", "U4", "d", "e", "chi", "chid")


@dataclass(frozen=True)
class QuadrotorParams:
    """Physical constants of the vehicle (defaults: 0.24 kg mini quadrotor)."""

    m: float = 0.24          # kg
    i_x: float = 2.3e-3      # kg m^2
    i_y: float = 2.3e-3
    i_z: float = 4.0e-3
    l: float = 0.20          # arm length, m
    b: float = 3.0e-6        # thrust coefficient, N s^2
    d: float = 1.0e-7        # rotor drag coefficient, N m s^2
    j_r: float = 2.0e-5      # rotor inertia, kg m^2
    omega_max: float = 600.0  # rotor speed limit, rad/s
    g: float = 9.81

    def __post_init__(self):
        for name in ("m", "i_x", "i_y", "i_z", "l", "b", "d", "j_r", "omega_max", "g"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be > 0 (got {getattr(self, name)})")


@dataclass(frozen=True)
class OuterLoopParams:
    """Guidance-to-acceleration outer loop."""

    k_chi: float = 3.0                       # course-channel gain, 1/s
    omega_max: float = 0.8                   # course-rate limit, rad/s
    tau_chi: float = 0.6                     # command-filter time constant, s
    v_ref: float = 2.0                       # tangential speed reference, m/s
    k_v: float = 2.5                         # velocity-loop gain, 1/s
    a_max: float = 8.0                       # horizontal acceleration clamp, m/s^2
    k_rad: float = 0.8                       # radial-correction gain, 1/s
    phi_max: float = math.radians(40.0)      # tilt command limits, rad
    theta_max: float = math.radians(40.0)
    r_d: float = 20.0                        # standoff radius, m
    z_d: float = 10.0                        # orbit altitude, m
    k_g: float = 0.08                        # shaping gain, 1/m
    direction: int = 1                       # +1 CCW

    def __post_init__(self):
        for name in ("k_chi", "omega_max", "tau_chi", "v_ref", "k_v", "a_max",
                     "k_rad", "r_d", "z_d", "k_g"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be > 0 (got {getattr(self, name)})")
        if not (0.0 < self.phi_max < 0.5 * math.pi and 0.0 < self.theta_max < 0.5 * math.pi):
            raise ValueError("tilt limits must lie in (0, pi/2)")
        if self.direction not in (-1, 1):
            raise ValueError("direction must be +1 or -1")


@dataclass(frozen=True)
class InnerLoopParams:
    """PD attitude/altitude loops; bandwidth ~5x above the outer loop."""

    att_kp: float = 144.0       # roll/pitch, wn ~ 12 rad/s
    att_kd: float = 21.6
    yaw_kp: float = 36.0        # wn ~ 6 rad/s
    yaw_kd: float = 12.0
    alt_kp: float = 4.0
    alt_kd: float = 4.0
    climb_accel_max: float = 5.0   # vertical acceleration clamp, m/s^2
    thrust_headroom: float = 0.85  # cap U1 below the rotor ceiling so the
                                   # mixer always keeps moment authority


@dataclass(frozen=True)
class QuadSimConfig:
    quad: QuadrotorParams = field(default_factory=QuadrotorParams)
    outer: OuterLoopParams = field(default_factory=OuterLoopParams)
    inner: InnerLoopParams = field(default_factory=InnerLoopParams)
    x0: float = 0.0
    y0: float = -5.0
    z0: float = 0.0
    psi0: Optional[float] = None     # rad; None aligns with the initial course command
    t_final: float = 100.0
    dt_control: float = 0.01
    substeps: int = 10

    def __post_init__(self):
        if not self.t_final > 0.0 or not self.dt_control > 0.0:
            raise ValueError("t_final and dt_control must be > 0")
        if self.substeps < 1:
            raise ValueError("substeps must be >= 1")


@dataclass(frozen=True)
class QuadrotorState:
    """Rigid-body state: position, inertial velocity, attitude, body rates."""

    x: float = 0.0
    y: float = 0.0
    z: float = 0.0
    vx: float = 0.0
    vy: float = 0.0
    vz: float = 0.0
    phi: float = 0.0
    theta: float = 0.0
    psi: float = 0.0
    p: float = 0.0
    q: float = 0.0
    r: float = 0.0
    t: float = 0.0

    def as_tuple(self):
        return (self.x, self.y, self.z, self.vx, self.vy, self.vz,
                self.phi, self.theta, self.psi, self.p, self.q, self.r)


@dataclass
class QuadTrace:
    """Logged 6DOF run: states, control inputs and guidance diagnostics."""

    t: np.ndarray
    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    phi: np.ndarray
    theta: np.ndarray
    psi: np.ndarray
    u: np.ndarray          # shape (n, 4), applied after rotor clamping
    d: np.ndarray
    e: np.ndarray
    chi: np.ndarray        # course-channel state
    chid: np.ndarray       # commanded course
    gamma: np.ndarray
    chi_rate: np.ndarray   # saturated channel rate
    phid: np.ndarray
    thetad: np.ndarray
    omega: np.ndarray      # rotor speeds, shape (n, 4)
    vx: np.ndarray
    vy: np.ndarray
    vz: np.ndarray
    meta: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.t)

    def to_csv(self, path) -> None:
        cols = (self.t, self.x, self.y, self.z, self.phi, self.theta, self.psi,
                self.u[:, 0], self.u[:, 1], self.u[:, 2], self.u[:, 3],
                self.d, self.e, self.chi, self.chid)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(",".join(QUAD_TRACE_COLUMNS) + "\n")
            for row in zip(*cols):
                fh.write(",".join(repr(float(v)) for v in row) + "\n")


def filter_course_command(chi_f: float, chi_d: float, tau: float, dt: float) -> float:
    """One step of the wrap-aware first-order command filter.

    Uses the exact zero-order-hold discretisation, so a step command decays
    as exp(-t/tau) regardless of dt.
    """
    if not tau > 0.0:
        raise ValueError(f"tau must be > 0 (got {tau})")
    delta = wrap(chi_d - chi_f)
    return wrap(chi_f + (1.0 - math.exp(-dt / tau)) * delta)


def course_rate(chi: float, chi_f: float, k_chi: float, omega_max: float) -> float:
    """Saturated course-channel rate sat(k_chi * wrap(chi_f - chi), omega_max)."""
    raw = k_chi * wrap(chi_f - chi)
    if raw > omega_max:
        return omega_max
    if raw < -omega_max:
        return -omega_max
    return raw


def course_channel_step(chi: float, chi_f: float, k_chi: float, omega_max: float,
                        dt: float) -> float:
    """Advance the rate-saturated course channel one step."""
    if not dt > 0.0:
        raise ValueError(f"dt must be > 0 (got {dt})")
    return wrap(chi + dt * course_rate(chi, chi_f, k_chi, omega_max))


def velocity_reference(chi: float, gamma: float, e: float,
                       params: OuterLoopParams) -> Tuple[float, float]:
    """Tangential reference along the course plus an explicit radial correction."""
    return (params.v_ref * math.cos(chi) - params.k_rad * e * math.cos(gamma),
            params.v_ref * math.sin(chi) - params.k_rad * e * math.sin(gamma))


def acceleration_command(v_ref: Sequence[float], v_xy: Sequence[float],
                         k_v: float, a_max: float) -> Tuple[float, float]:
    """Proportional velocity loop with a direction-preserving norm clamp."""
    if not a_max > 0.0:
        raise ValueError(f"a_max must be > 0 (got {a_max})")
    ax = k_v * (v_ref[0] - v_xy[0])
    ay = k_v * (v_ref[1] - v_xy[1])
    norm = math.hypot(ax, ay)
    if norm > a_max:
        scale = a_max / norm
        ax *= scale
        ay *= scale
    return ax, ay


def acceleration_to_attitude(a_cmd: Sequence[float], psi: float, g: float,
                             phi_max: float, theta_max: float) -> Tuple[float, float]:
    """Small-to-moderate tilt mapping from planar acceleration to (phi, theta).

    theta_cmd = (ax cos(psi) + ay sin(psi)) / g
    phi_cmd   = (ax sin(psi) - ay cos(psi)) / g, both clamped.
    """
    if not g > 0.0:
        raise ValueError(f"g must be > 0 (got {g})")
    ax, ay = a_cmd
    c, s = math.cos(psi), math.sin(psi)
    theta_d = (ax * c + ay * s) / g
    phi_d = (ax * s - ay * c) / g
    theta_d = max(-theta_max, min(theta_max, theta_d))
    phi_d = max(-phi_max, min(phi_max, phi_d))
    return phi_d, theta_d


def mix_rotors(u: Sequence[float], params: QuadrotorParams):
    """Invert the cross-configuration thrust/moment map into rotor speeds.

        U1 = b (O1^2 + O2^2 + O3^2 + O4^2)
        U2 = b l (O4^2 - O2^2)
        U3 = b l (O3^2 - O1^2)
        U4 = d (O2^2 + O4^2 - O1^2 - O3^2)

    Squared speeds are clamped to [0, omega_max^2]; the achievable inputs
    are recomputed from the clamped speeds so the applied wrench is always
    actuator-consistent.  Returns (omega, applied_u).
    """
    u1, u2, u3, u4 = u
    thrust_sq = u1 / params.b
    roll_sq = u2 / (params.b * params.l)
    pitch_sq = u3 / (params.b * params.l)
    yaw_sq = u4 / params.d
    pair24 = 0.5 * (thrust_sq + yaw_sq)
    pair13 = 0.5 * (thrust_sq - yaw_sq)
    sq = np.array([
        0.5 * (pair13 - pitch_sq),
        0.5 * (pair24 - roll_sq),
        0.5 * (pair13 + pitch_sq),
        0.5 * (pair24 + roll_sq),
    ])
    np.clip(sq, 0.0, params.omega_max ** 2, out=sq)
    omega = np.sqrt(sq)
    applied = np.array([
        params.b * float(sq.sum()),
        params.b * params.l * (sq[3] - sq[1]),
        params.b * params.l * (sq[2] - sq[0]),
        params.d * (sq[1] + sq[3] - sq[0] - sq[2]),
    ])
    return omega, applied


def _deriv(s, u, params: QuadrotorParams, omega_r: float):
    (x, y, z, vx, vy, vz, phi, theta, psi, p, q, r) = s
    u1, u2, u3, u4 = u
    sp, cp = math.sin(phi), math.cos(phi)
    st, ct = math.sin(theta), math.cos(theta)
    ss, cs = math.sin(psi), math.cos(psi)
    thrust = u1 / params.m
    ax = (cp * st * cs + sp * ss) * thrust
    ay = (cp * st * ss - sp * cs) * thrust
    az = cp * ct * thrust - params.g
    tt = st / ct
    phidot = p + (q * sp + r * cp) * tt
    thetadot = q * cp - r * sp
    psidot = (q * sp + r * cp) / ct
    pdot = ((params.i_y - params.i_z) * q * r - params.j_r * q * omega_r + u2) / params.i_x
    qdot = ((params.i_z - params.i_x) * p * r + params.j_r * p * omega_r + u3) / params.i_y
    rdot = ((params.i_x - params.i_y) * p * q + u4) / params.i_z
    return (vx, vy, vz, ax, ay, az, phidot, thetadot, psidot, pdot, qdot, rdot)


def _rk4(s, u, params: QuadrotorParams, dt: float, omega_r: float):
    k1 = _deriv(s, u, params, omega_r)
    k2 = _deriv(tuple(si + 0.5 * dt * ki for si, ki in zip(s, k1)), u, params, omega_r)
    k3 = _deriv(tuple(si + 0.5 * dt * ki for si, ki in zip(s, k2)), u, params, omega_r)
    k4 = _deriv(tuple(si + dt * ki for si, ki in zip(s, k3)), u, params, omega_r)
    sixth = dt / 6.0
    return tuple(si + sixth * (a + 2.0 * (b + c) + d)
                 for si, a, b, c, d in zip(s, k1, k2, k3, k4))


def step_quadrotor(state: QuadrotorState, u: Sequence[float],
                   params: QuadrotorParams, dt: float,
                   omega_r: float = 0.0) -> QuadrotorState:
    """One RK4 step of the rigid body under held inputs (U1..U4).

    omega_r is the net rotor speed feeding the gyroscopic terms; the
    closed-loop runner supplies it from the mixer, 0 disables the terms.
    """
    if not dt > 0.0:
        raise ValueError(f"dt must be > 0 (got {dt})")
    if u[0] < 0.0:
        raise ValueError(f"thrust U1 must be >= 0 (got {u[0]})")
    nxt = _rk4(state.as_tuple(), tuple(u), params, dt, omega_r)
    if not all(math.isfinite(v) for v in nxt):
        raise NonFinite(f"rigid-body state non-finite at t = {state.t + dt:.4f} s")
    return QuadrotorState(*nxt, t=state.t + dt)


def run_6dof_inspection(cfg: QuadSimConfig) -> QuadTrace:
    """Fly the full guidance cascade on the rigid-body model.

    Control runs at 1/dt_control with the rigid body integrated in
    `substeps` RK4 sub-steps per control update.
    """
    qp, op, ip = cfg.quad, cfg.outer, cfg.inner
    curve = Circle(op.r_d)
    gp = GuidanceParams(k_g=op.k_g, direction=op.direction, v_g=op.v_ref,
                        omega_max=op.omega_max)
    dtc = cfg.dt_control
    dts = dtc / cfg.substeps

    chi = chi_f = glass_heading(cfg.x0, cfg.y0, curve, gp)
    psi0 = chi if cfg.psi0 is None else wrap(cfg.psi0)
    s = (cfg.x0, cfg.y0, cfg.z0, 0.0, 0.0, 0.0, 0.0, 0.0, psi0, 0.0, 0.0, 0.0)

    n = int(round(cfg.t_final / dtc))
    log = {k: np.empty(n + 1) for k in
           ("t", "x", "y", "z", "phi", "theta", "psi", "d", "e", "chi", "chid",
            "gamma", "chi_rate", "phid", "thetad", "vx", "vy", "vz")}
    u_log = np.empty((n + 1, 4))
    omega_log = np.empty((n + 1, 4))

    for i in range(n + 1):
        t = i * dtc
        if not all(math.isfinite(v) for v in s):
            raise NonFinite(f"quadrotor state non-finite at t = {t:.3f} s")
        x, y, z, vx, vy, vz, phi, theta, psi, p, q, r = s
        d = math.hypot(x, y)
        gamma = math.atan2(y, x)
        e = d - op.r_d

        chi_d = glass_heading(x, y, curve, gp)
        chi_f = filter_course_command(chi_f, chi_d, op.tau_chi, dtc)
        rate = course_rate(chi, chi_f, op.k_chi, op.omega_max)
        chi = wrap(chi + dtc * rate)

        v_ref = velocity_reference(chi, gamma, e, op)
        a_cmd = acceleration_command(v_ref, (vx, vy), op.k_v, op.a_max)
        phi_d, theta_d = acceleration_to_attitude(a_cmd, psi, qp.g,
                                                  op.phi_max, op.theta_max)
        psi_d = chi

        az_cmd = ip.alt_kp * (op.z_d - z) - ip.alt_kd * vz
        az_cmd = max(-ip.climb_accel_max, min(ip.climb_accel_max, az_cmd))
        tilt = max(math.cos(phi) * math.cos(theta), 0.5)
        u1 = qp.m * (qp.g + az_cmd) / tilt
        u1 = min(u1, ip.thrust_headroom * 4.0 * qp.b * qp.omega_max ** 2)
        u2 = qp.i_x * (ip.att_kp * (phi_d - phi) - ip.att_kd * p)
        u3 = qp.i_y * (ip.att_kp * (theta_d - theta) - ip.att_kd * q)
        u4 = qp.i_z * (ip.yaw_kp * wrap(psi_d - psi) - ip.yaw_kd * r)
        omega, applied = mix_rotors((max(u1, 0.0), u2, u3, u4), qp)
        omega_r = omega[1] + omega[3] - omega[0] - omega[2]

        for key, val in (("t", t), ("x", x), ("y", y), ("z", z), ("phi", phi),
                         ("theta", theta), ("psi", psi), ("d", d), ("e", e),
                         ("chi", chi), ("chid", chi_d), ("gamma", gamma),
                         ("chi_rate", rate), ("phid", phi_d), ("thetad", theta_d),
                         ("vx", vx), ("vy", vy), ("vz", vz)):
            log[key][i] = val
        u_log[i] = applied
        omega_log[i] = omega

        if i == n:
            break
        for _ in range(cfg.substeps):
            s = _rk4(s, tuple(applied), qp, dts, omega_r)

    return QuadTrace(
        t=log["t"], x=log["x"], y=log["y"], z=log["z"], phi=log["phi"],
        theta=log["theta"], psi=log["psi"], u=u_log, d=log["d"], e=log["e"],
        chi=log["chi"], chid=log["chid"], gamma=log["gamma"],
        chi_rate=log["chi_rate"], phid=log["phid"], thetad=log["thetad"],
        omega=omega_log, vx=log["vx"], vy=log["vy"], vz=log["vz"],
        meta={"r_d": op.r_d, "z_d": op.z_d, "k_g": op.k_g,
              "dt_control": dtc, "substeps": cfg.substeps},
    )


def final_lap_slice(trace: QuadTrace) -> slice:
    """Indices spanning the last full revolution of LOS angle.

    Falls back to the trailing half of the trace when less than one
    revolution was flown.
    """
    g = np.unwrap(trace.gamma)
    swept = np.abs(g[-1] - g)
    idx = np.flatnonzero(swept >= 2.0 * math.pi)
    start = int(idx[-1]) + 1 if idx.size else len(g) // 2
    return slice(start, None)
