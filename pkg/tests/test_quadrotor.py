import math

import numpy as np
import pytest

import glasskit as gk
from glasskit import (
    InnerLoopParams,
    OuterLoopParams,
    QuadrotorParams,
    QuadrotorState,
    QuadSimConfig,
)


QP = QuadrotorParams()


# --- course command filter -----------------------------------------------

def test_filter_fixed_point():
    assert gk.filter_course_command(0.3, 0.3, 0.6, 0.01) == pytest.approx(0.3, abs=1e-15)


def test_filter_takes_short_way_around():
    chi_f, chi_d = math.pi - 0.1, -math.pi + 0.1
    out = gk.filter_course_command(chi_f, chi_d, 0.6, 0.01)
    # moves in +direction across the wrap, not the long way back through 0
    assert gk.wrap(out - chi_f) > 0.0
    assert abs(gk.wrap(out - chi_d)) < abs(gk.wrap(chi_f - chi_d))


def test_filter_step_response_profile():
    tau, dt = 0.6, 1e-3
    chi_f = 0.0
    worst = 0.0
    for i in range(1, int(2.0 / dt) + 1):
        chi_f = gk.filter_course_command(chi_f, 1.0, tau, dt)
        worst = max(worst, abs(chi_f - (1.0 - math.exp(-i * dt / tau))))
    assert worst < 1e-4


# --- course channel ---------------------------------------------------------

def test_channel_fixed_point():
    assert gk.course_channel_step(0.2, 0.2, 3.0, 0.8, 0.01) == pytest.approx(0.2, abs=1e-15)


def test_channel_saturates_exactly():
    chi = 0.0
    out = gk.course_channel_step(chi, 2.0, 3.0, 0.8, 0.01)
    assert (out - chi) / 0.01 == pytest.approx(0.8, abs=1e-12)
    out = gk.course_channel_step(chi, -2.0, 3.0, 0.8, 0.01)
    assert (out - chi) / 0.01 == pytest.approx(-0.8, abs=1e-12)


def test_channel_unsaturated_rate():
    out = gk.course_channel_step(0.0, 0.1, 3.0, 0.8, 0.01)
    assert (out - 0.0) / 0.01 == pytest.approx(0.3, rel=1e-12)


# --- outer-loop pieces --------------------------------------------------------

def test_velocity_reference_tangential_when_on_curve():
    op = OuterLoopParams()
    vx, vy = gk.velocity_reference(0.3, -1.0, 0.0, op)
    assert (vx, vy) == pytest.approx((2.0 * math.cos(0.3), 2.0 * math.sin(0.3)), abs=1e-15)


def test_velocity_reference_radial_correction_sign():
    op = OuterLoopParams()
    gamma = 0.4
    v = gk.velocity_reference(gamma + math.pi / 2, gamma, 5.0, op)
    radial = v[0] * math.cos(gamma) + v[1] * math.sin(gamma)
    assert radial == pytest.approx(-op.k_rad * 5.0, abs=1e-12)


def test_velocity_reference_arithmetic():
    op = OuterLoopParams()
    assert gk.velocity_reference(math.pi / 2, 0.0, 5.0, op) == pytest.approx((-4.0, 2.0), abs=1e-12)


def test_acceleration_command_zero_error():
    assert gk.acceleration_command((1.0, -2.0), (1.0, -2.0), 2.5, 8.0) == (0.0, 0.0)


def test_acceleration_command_norm_clamp():
    ax, ay = gk.acceleration_command((4.0, 0.0), (0.0, 0.0), 2.5, 8.0)
    assert (ax, ay) == pytest.approx((8.0, 0.0), abs=1e-12)


def test_acceleration_command_unclamped():
    ax, ay = gk.acceleration_command((1.0, 1.0), (0.0, 0.0), 2.5, 8.0)
    assert (ax, ay) == pytest.approx((2.5, 2.5), abs=1e-15)


def test_attitude_mapping_hover():
    assert gk.acceleration_to_attitude((0.0, 0.0), 0.7, 9.81,
                                       math.radians(40), math.radians(40)) == (0.0, 0.0)


def test_attitude_mapping_clamps():
    phi_d, theta_d = gk.acceleration_to_attitude((9.81, 0.0), 0.0, 9.81,
                                                 math.radians(40), math.radians(40))
    assert theta_d == pytest.approx(math.radians(40), abs=1e-12)
    assert phi_d == 0.0


def test_attitude_mapping_yaw_rotation_consistency():
    phi_d, theta_d = gk.acceleration_to_attitude((5.0, 0.0), math.pi / 2, 9.81,
                                                 math.radians(40), math.radians(40))
    assert theta_d == pytest.approx(0.0, abs=1e-12)
    assert phi_d == pytest.approx(5.0 / 9.81, rel=1e-12)


# --- rigid body ---------------------------------------------------------------

def test_hover_force_balance_is_exact():
    state = QuadrotorState()
    nxt = gk.step_quadrotor(state, (QP.m * QP.g, 0.0, 0.0, 0.0), QP, 1e-3)
    assert nxt.as_tuple() == state.as_tuple()
    assert nxt.t == pytest.approx(1e-3)


def test_free_fall():
    state = QuadrotorState()
    dt = 1e-3
    for _ in range(500):
        state = gk.step_quadrotor(state, (0.0, 0.0, 0.0, 0.0), QP, dt)
    assert state.vz == pytest.approx(-QP.g * 0.5, rel=1e-12)
    assert state.z == pytest.approx(-0.5 * QP.g * 0.25, rel=1e-12)


def test_pure_yaw_torque():
    state = QuadrotorState()
    u4, dt = 1e-3, 1e-3
    for _ in range(100):
        state = gk.step_quadrotor(state, (0.0, 0.0, 0.0, u4), QP, dt)
    assert state.psi == pytest.approx(u4 * 0.1 ** 2 / (2.0 * QP.i_z), abs=1e-6)
    assert state.phi == 0.0 and state.theta == 0.0


def test_step_rejects_negative_thrust():
    with pytest.raises(ValueError):
        gk.step_quadrotor(QuadrotorState(), (-1.0, 0.0, 0.0, 0.0), QP, 1e-3)


def test_hover_energy_drift():
    state = QuadrotorState()
    u = (QP.m * QP.g, 0.0, 0.0, 0.0)
    for _ in range(10_000):
        state = gk.step_quadrotor(state, u, QP, 1e-3)
    kinetic = (0.5 * QP.m * (state.vx ** 2 + state.vy ** 2 + state.vz ** 2)
               + 0.5 * (QP.i_x * state.p ** 2 + QP.i_y * state.q ** 2 + QP.i_z * state.r ** 2))
    assert kinetic < 1e-9


# --- rotor mixing ----------------------------------------------------------------

def test_mix_hover_symmetric():
    omega, applied = gk.mix_rotors((QP.m * QP.g, 0.0, 0.0, 0.0), QP)
    want = math.sqrt(QP.m * QP.g / (4.0 * QP.b))
    assert np.allclose(omega, want, rtol=1e-12)
    assert applied[0] == pytest.approx(QP.m * QP.g, rel=1e-12)
    assert np.allclose(applied[1:], 0.0, atol=1e-15)


def test_mix_clamps_negative_squares():
    omega, applied = gk.mix_rotors((0.05, 0.5, 0.0, 0.0), QP)
    assert omega[1] == 0.0            # roll demand drove rotor 2 below zero
    assert applied[1] < 0.5           # achievable moment was reduced
    assert np.all(omega <= QP.omega_max)


def test_mix_round_trip_in_feasible_set():
    rng = np.random.default_rng(3)
    for _ in range(200):
        w = rng.uniform(50.0, 550.0, 4)
        sq = w ** 2
        u = (QP.b * sq.sum(),
             QP.b * QP.l * (sq[3] - sq[1]),
             QP.b * QP.l * (sq[2] - sq[0]),
             QP.d * (sq[1] + sq[3] - sq[0] - sq[2]))
        omega, applied = gk.mix_rotors(u, QP)
        assert np.allclose(omega, w, rtol=1e-9, atol=1e-9)
        assert np.allclose(applied, u, rtol=1e-9, atol=1e-12)


# --- closed-loop smoke -----------------------------------------------------------

def test_short_run_respects_bounds():
    cfg = QuadSimConfig(t_final=15.0)
    trace = gk.run_6dof_inspection(cfg)
    assert np.all(np.isfinite(trace.z))
    assert np.max(np.abs(trace.chi_rate)) <= cfg.outer.omega_max + 1e-12
    assert np.max(np.abs(trace.phid)) <= cfg.outer.phi_max + 1e-12
    assert np.max(np.abs(trace.thetad)) <= cfg.outer.theta_max + 1e-12
    assert np.min(trace.omega) >= 0.0
    assert np.max(trace.omega) <= cfg.quad.omega_max + 1e-9


def test_long_run_steady_orbit(quad_trace):
    lap = gk.final_lap_slice(quad_trace)
    mean_radius = float(np.mean(quad_trace.d[lap]))
    assert mean_radius == pytest.approx(20.0, rel=0.05)
    assert np.max(np.abs(quad_trace.z[lap] - 10.0)) < 0.1
    # steady turning comes from constant tilt, not persistent torque
    for i in (1, 2, 3):
        peak = np.max(np.abs(quad_trace.u[:, i]))
        assert abs(np.mean(quad_trace.u[lap, i])) < 0.05 * peak
    # hover-plus-centripetal thrust
    assert np.mean(quad_trace.u[lap, 0]) > QP.m * QP.g
    # LOS rate settles to a constant band
    gdot = np.diff(np.unwrap(quad_trace.gamma[lap])) / 0.01
    mean_rate = float(np.mean(gdot))
    assert np.all(np.abs(gdot - mean_rate) <= 0.02 * abs(mean_rate))
    period = 2.0 * math.pi / mean_rate
    v_circ = float(np.mean(np.hypot(quad_trace.vx[lap], quad_trace.vy[lap])))
    assert period == pytest.approx(2.0 * math.pi * mean_radius / v_circ, rel=0.02)


def test_quadrotor_params_validation():
    with pytest.raises(ValueError):
        QuadrotorParams(m=0.0)
    with pytest.raises(ValueError):
        OuterLoopParams(phi_max=2.0)
    with pytest.raises(ValueError):
        QuadSimConfig(substeps=0)
    InnerLoopParams()  # defaults construct fine
