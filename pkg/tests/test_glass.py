import math
from dataclasses import replace

import numpy as np
import pytest

import glasskit as gk
from glasskit import Circle, Ellipse, GuidanceParams, NonPositiveRange
from glasskit.glass import _look_angle_scalar


def params(k_g=0.02, direction=1, v_g=20.0, eps=0.05):
    return GuidanceParams(k_g=k_g, direction=direction, v_g=v_g, eps=eps)


# --- shaping -----------------------------------------------------------

def test_shaping_zero():
    assert gk.shaping(0.0, 0.02) == 0.0


def test_shaping_far_field_value():
    val = gk.shaping(450.0, 0.007)
    assert val == -math.tanh(3.15)
    assert val == pytest.approx(-0.9963, abs=1e-4)
    assert abs(val) < 1.0


def test_shaping_odd():
    assert gk.shaping(-148.52, 0.02) == pytest.approx(math.tanh(0.02 * 148.52), rel=1e-15)


def test_shaping_rejects_bad_gain():
    with pytest.raises(ValueError):
        gk.shaping(1.0, 0.0)


# --- look-angle solution ----------------------------------------------

def test_on_curve_tangential_ccw():
    sol = gk.solve_look_angle(0.0, 0.0, params(direction=1))
    assert sol.lam == pytest.approx(math.pi / 2, abs=1e-15)


def test_on_curve_tangential_cw():
    sol = gk.solve_look_angle(0.0, 0.0, params(direction=-1))
    assert sol.lam == pytest.approx(-math.pi / 2, abs=1e-15)


def test_far_outside_principal_angle():
    sol = gk.solve_look_angle(450.0, 0.0, params(k_g=0.007))
    assert sol.gamma_lam == pytest.approx(math.acos(-math.tanh(3.15)), abs=1e-12)
    assert sol.gamma_lam == pytest.approx(3.0557, abs=5e-4)
    assert sol.residual < 1e-12


@pytest.mark.parametrize("direction", [1, -1])
def test_both_branches_satisfy_constraint(direction):
    sol = gk.solve_look_angle(100.0, 0.5, params(k_g=0.05, direction=direction))
    assert sol.residual < 1e-12
    assert 0.0 <= sol.gamma_lam <= math.pi


def test_branch_independent_contraction():
    rng = np.random.default_rng(7)
    e = rng.uniform(-1e4, 1e4, 10_000)
    a = rng.uniform(-10.0, 10.0, 10_000)
    gp = params()
    want = gk.error_rate(e, gp)
    for direction in (1, -1):
        sol = gk.solve_look_angle(e, a, replace(gp, direction=direction))
        edot = gp.v_g * (np.cos(sol.lam) - a * np.sin(sol.lam))
        assert np.max(np.abs(edot - want)) < 1e-10


def test_scalar_and_array_paths_agree():
    rng = np.random.default_rng(21)
    e = rng.uniform(-1e5, 1e5, 1000)
    a = rng.uniform(-50.0, 50.0, 1000)
    gp = params(k_g=0.03)
    sol = gk.solve_look_angle(e, a, gp)
    for i in range(e.size):
        lam = gk.wrap(_look_angle_scalar(float(e[i]), float(a[i]), gp.k_g, gp.direction))
        assert abs(gk.wrap(lam - float(sol.lam[i]))) < 1e-13


# --- slope bound -------------------------------------------------------

def test_slope_bound_values():
    assert gk.look_angle_slope_bound(0.0, 0.02) == pytest.approx(0.02, abs=1e-15)
    assert gk.look_angle_slope_bound(1.0, 0.02) == pytest.approx(0.02 / math.sqrt(2.0), rel=1e-12)


def test_slope_bound_holds_numerically():
    rng = np.random.default_rng(13)
    e = rng.uniform(-2000.0, 2000.0, 10_000)
    a = rng.uniform(-20.0, 20.0, 10_000)
    gp = params(k_g=0.05)
    h = 1e-3
    hi = gk.solve_look_angle(e + h, a, gp).gamma_lam
    lo = gk.solve_look_angle(e - h, a, gp).gamma_lam
    fd = np.abs(hi - lo) / (2.0 * h)
    assert np.all(fd <= gk.look_angle_slope_bound(a, gp.k_g) + 1e-9)


# --- reduced dynamics and analytics -------------------------------------

def test_error_rate_values():
    gp = params(k_g=0.02, v_g=20.0)
    assert gk.error_rate(0.0, gp) == 0.0
    assert gk.error_rate(314.78, gp) == pytest.approx(-20.0 * math.tanh(6.2956), rel=1e-15)
    gp2 = params(k_g=0.1, v_g=20.0)
    assert gk.error_rate(-10.0, gp2) == pytest.approx(20.0 * math.tanh(1.0), rel=1e-15)
    assert gk.error_rate(-10.0, gp2) == pytest.approx(15.231, abs=1e-3)


def test_lyapunov_zero_at_origin():
    assert gk.lyapunov_value(0.0, 0.02) == 0.0


def test_lyapunov_matches_high_precision_oracle():
    mpmath = pytest.importorskip("mpmath")
    mpmath.mp.dps = 50
    for e, k in ((50.0, 0.02), (0.5, 0.1), (123.4, 0.007), (1e6, 0.02)):
        want = float(mpmath.log(mpmath.cosh(mpmath.mpf(k) * mpmath.mpf(e))) / mpmath.mpf(k))
        assert gk.lyapunov_value(e, k) == pytest.approx(want, rel=1e-9)


def test_lyapunov_moderate_value():
    assert gk.lyapunov_value(50.0, 0.02) == pytest.approx(50.0 * math.log(math.cosh(1.0)), rel=1e-12)
    assert gk.lyapunov_value(50.0, 0.02) == pytest.approx(21.689, abs=1e-3)


def test_lyapunov_far_field_asymptote():
    assert gk.lyapunov_value(1e6, 0.02) == pytest.approx(1e6 - math.log(2.0) / 0.02, rel=1e-12)


def test_tube_entry_time_reference_values():
    assert gk.tube_entry_time(314.78, params(k_g=0.02)) == pytest.approx(31.276, abs=1e-3)
    assert gk.tube_entry_time(-148.52, params(k_g=0.02)) == pytest.approx(22.956, abs=1e-3)
    assert gk.tube_entry_time(314.78, params(k_g=0.10)) == pytest.approx(18.042, abs=1e-3)
    assert gk.tube_entry_time(0.01, params(k_g=0.02)) == 0.0


def test_tube_entry_time_rejects_bad_tube():
    with pytest.raises(gk.InvalidTube):
        gk.tube_entry_time(100.0, params(), eps=0.0)
    with pytest.raises(gk.InvalidTube):
        gk.tube_entry_time(100.0, params(), eps=-0.1)


def test_oracle_initial_condition_exact():
    gp = params()
    assert gk.error_trajectory_oracle(314.78, 0.0, gp) == 314.78
    assert gk.error_trajectory_oracle(-148.52, 0.0, gp) == -148.52


def test_oracle_hits_tube_at_entry_time():
    for e0, k in ((314.78, 0.02), (-148.52, 0.02), (450.0, 0.007), (-144.0983, 0.02)):
        gp = params(k_g=k)
        t_eps = gk.tube_entry_time(e0, gp)
        e_at = gk.error_trajectory_oracle(e0, t_eps, gp)
        assert abs(abs(e_at) - gp.eps) < 1e-9 * (1.0 + gp.eps)


def test_oracle_preserves_sign_and_monotone():
    gp = params()
    t = np.linspace(0.0, 60.0, 601)
    e = gk.error_trajectory_oracle(-148.52, t, gp)
    assert np.all(e < 0.0)
    assert np.all(np.diff(np.abs(e)) < 0.0)


def test_oracle_far_field_stable():
    gp = params()
    val = gk.error_trajectory_oracle(1e6, 1.0, gp)
    assert math.isfinite(val)
    # near-constant-speed contraction far from the curve
    assert val == pytest.approx(1e6 - 20.0, abs=1e-3)


def test_lyapunov_decreases_along_oracle():
    gp = params()
    t_eps = gk.tube_entry_time(314.78, gp)
    t = np.linspace(0.0, 2.0 * t_eps, 1000)
    v = gk.lyapunov_value(gk.error_trajectory_oracle(314.78, t, gp), gp.k_g)
    assert np.all(np.diff(v) < 0.0)


def test_rk4_matches_oracle_single_case():
    gp = params(k_g=0.04)
    e0 = -148.52
    horizon = 2.0 * gk.tube_entry_time(e0, gp)
    dt = 1e-3
    n = int(math.ceil(horizon / dt))
    es = np.empty(n + 1)
    es[0] = e0
    e = e0
    for i in range(n):
        k1 = gk.error_rate(e, gp)
        k2 = gk.error_rate(e + 0.5 * dt * k1, gp)
        k3 = gk.error_rate(e + 0.5 * dt * k2, gp)
        k4 = gk.error_rate(e + dt * k3, gp)
        e += dt / 6.0 * (k1 + 2.0 * (k2 + k3) + k4)
        es[i + 1] = e
    truth = gk.error_trajectory_oracle(e0, np.arange(n + 1) * dt, gp)
    assert np.max(np.abs(es - truth)) < 1e-6


# --- commanded course ----------------------------------------------------

def test_commanded_course_on_orbit():
    state = gk.EngagementState.from_xy(200.0, 0.0, 0.0)
    chi = gk.commanded_course(state, Circle(200.0), params(direction=1))
    assert chi == pytest.approx(math.pi / 2, abs=1e-12)


def test_commanded_course_far_outside_radial():
    state = gk.EngagementState.from_xy(2000.0, 0.0, 0.0)
    chi = gk.commanded_course(state, Circle(200.0), params(k_g=1.0))
    assert chi == pytest.approx(math.pi, abs=1e-3)


def test_commanded_course_satisfies_constraint():
    curve = Ellipse(300.0, 200.0)
    state = gk.EngagementState.from_xy(450.0, -250.0, 0.0)
    gp = params(k_g=0.02)
    chi = gk.commanded_course(state, curve, gp)
    lam = gk.wrap(chi - state.gamma)
    e = state.d - curve.radius_at(state.gamma)
    a = curve.radius_slope_at(state.gamma) / state.d
    assert abs(math.cos(lam) - a * math.sin(lam) + math.tanh(gp.k_g * e)) < 1e-12


def test_heading_undefined_at_origin():
    with pytest.raises(NonPositiveRange):
        gk.glass_heading(0.0, 0.0, Circle(200.0), params())


def test_glass_heading_matches_commanded_course():
    curve = Ellipse(300.0, 200.0)
    state = gk.EngagementState.from_xy(450.0, -250.0, 0.0)
    gp = params(k_g=0.02)
    assert gk.glass_heading(450.0, -250.0, curve, gp) == pytest.approx(
        gk.commanded_course(state, curve, gp), abs=1e-15)


# --- parameter validation ------------------------------------------------

@pytest.mark.parametrize("kwargs", [
    {"k_g": 0.0}, {"k_g": -1.0}, {"k_g": 0.02, "direction": 0},
    {"k_g": 0.02, "v_g": 0.0}, {"k_g": 0.02, "omega_max": -0.5},
    {"k_g": 0.02, "eps": 0.0},
])
def test_guidance_params_validation(kwargs):
    with pytest.raises(ValueError):
        GuidanceParams(**kwargs)
