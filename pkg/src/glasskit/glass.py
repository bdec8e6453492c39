"""Geometric look-angle shaping: the guidance core.

The commanded look angle lam is defined implicitly against the standoff
curve by

    cos(lam) - a * sin(lam) = -tanh(k_g * e),        a = r'(gamma) / d,

which admits a real solution for every error e: |tanh| < 1 while the
phase-shift amplitude sqrt(1 + a^2) is >= 1, so the arccos argument stays
strictly inside (-1, 1) with no initial-condition feasibility constraint.
Closing the loop with either solution branch reduces the radial error to

    de/dt = -v_g * tanh(k_g * e),

a globally contracting scalar system with a closed-form tube-entry time.

Conventions: angles in radians, wrapped to (-pi, pi]; direction +1 orbits
counter-clockwise (look angle settles at +pi/2 on the curve), -1 clockwise.
Scalar entry points use the math module; the array paths broadcast with
numpy so property sweeps can run vectorised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .angles import wrap
from .curves import StandoffCurve, coupling, radius_at
from .errors import InvalidTube, NonPositiveRange

_LN2 = math.log(2.0)
# tanh rounds to exactly 1.0 in double precision for large arguments; keep
# the arccos argument strictly inside (-1, 1).
_ACOS_CLIP = 1.0 - 1e-15


@dataclass(frozen=True)
class GuidanceParams:
    """Shaping gain, orbit direction, speed, turn-rate limit and tube width."""

    k_g: float              # shaping gain, 1/m
    direction: int = 1      # +1 counter-clockwise, -1 clockwise
    v_g: float = 20.0       # ground speed, m/s
    omega_max: float = 0.5  # course-rate limit, rad/s
    eps: float = 0.05       # settling tube half-width, m

    def __post_init__(self):
        if not self.k_g > 0.0:
            raise ValueError(f"k_g must be > 0 (got {self.k_g})")
        if self.direction not in (-1, 1):
            raise ValueError(f"direction must be +1 or -1 (got {self.direction})")
        if not self.v_g > 0.0:
            raise ValueError(f"v_g must be > 0 (got {self.v_g})")
        if not self.omega_max > 0.0:
            raise ValueError(f"omega_max must be > 0 (got {self.omega_max})")
        if not self.eps > 0.0:
            raise ValueError(f"eps must be > 0 (got {self.eps})")


@dataclass(frozen=True)
class LookAngleSolution:
    """One branch solution of the implicit look-angle constraint."""

    lam: float        # commanded look angle, (-pi, pi]
    alpha: float      # phase shift atan(a)
    gamma_lam: float  # principal angle in [0, pi]
    residual: float   # |cos lam - a sin lam + tanh(k_g e)|, diagnostic


def shaping(e, k_g):
    """Bounded shaping term -tanh(k_g * e); |result| < 1 for any error."""
    if not k_g > 0.0:
        raise ValueError(f"k_g must be > 0 (got {k_g})")
    if isinstance(e, (int, float)):
        return -math.tanh(k_g * e)
    return -np.tanh(k_g * np.asarray(e, dtype=float))


def constraint_cos_argument(e, a, k_g):
    """Clamped arccos argument -tanh(k_g e)/sqrt(1 + a^2).

    The clamp only acts where tanh has already rounded to +-1.0; the
    returned value is strictly inside (-1, 1).
    """
    raw = -np.tanh(k_g * np.asarray(e, dtype=float)) / np.sqrt(1.0 + np.square(a))
    return np.clip(raw, -_ACOS_CLIP, _ACOS_CLIP)


def solve_look_angle(e, a, params: GuidanceParams) -> LookAngleSolution:
    """Solve the look-angle constraint for error e and geometry coupling a.

    Accepts scalars or broadcastable arrays.  Both direction branches
    satisfy the constraint, so the induced error rate
    v_g*(cos lam - a sin lam) equals -v_g*tanh(k_g*e) on either branch.
    """
    e = np.asarray(e, dtype=float)
    a = np.asarray(a, dtype=float)
    alpha = np.arctan(a)
    gamma_lam = np.arccos(constraint_cos_argument(e, a, params.k_g))
    lam = wrap(np.asarray(-alpha + params.direction * gamma_lam))
    residual = np.abs(np.cos(lam) - a * np.sin(lam) + np.tanh(params.k_g * e))
    if e.ndim == 0 and a.ndim == 0:
        return LookAngleSolution(float(lam), float(alpha), float(gamma_lam), float(residual))
    return LookAngleSolution(lam, alpha, gamma_lam, residual)


def look_angle_slope_bound(a, k_g):
    """Global bound k_g/sqrt(1 + a^2) on |d lam / d e|."""
    if not k_g > 0.0:
        raise ValueError(f"k_g must be > 0 (got {k_g})")
    return k_g / np.sqrt(1.0 + np.square(np.asarray(a, dtype=float)))


def error_rate(e, params: GuidanceParams):
    """Reduced radial error dynamics de/dt = -v_g * tanh(k_g * e)."""
    if isinstance(e, (int, float)):
        return -params.v_g * math.tanh(params.k_g * e)
    return -params.v_g * np.tanh(params.k_g * np.asarray(e, dtype=float))


def lyapunov_value(e, k_g):
    """Storage function ln(cosh(k_g e))/k_g; >= 0 with equality only at e = 0.

    Evaluated as |x| + log1p(exp(-2|x|)) - ln 2, which is exact for small
    arguments and never overflows for far-field errors.
    """
    if not k_g > 0.0:
        raise ValueError(f"k_g must be > 0 (got {k_g})")
    x = k_g * np.abs(np.asarray(e, dtype=float))
    val = (x + np.log1p(np.exp(-2.0 * x)) - _LN2) / k_g
    return float(val) if val.ndim == 0 else val


def _ln_sinh(x):
    """ln sinh x for x > 0, stable for both tiny and huge arguments."""
    return x + np.log1p(-np.exp(-2.0 * x)) - _LN2


def tube_entry_time(e0: float, params: GuidanceParams, eps: float | None = None) -> float:
    """Closed-form first time |e(t)| <= eps under the reduced dynamics.

    Returns 0 when the start is already inside the tube.  eps defaults to
    params.eps; pass an override to evaluate a different tube width.
    """
    tube = params.eps if eps is None else float(eps)
    if not tube > 0.0:
        raise InvalidTube(f"tube half-width must be > 0 (got {tube})")
    mag = abs(e0)
    if mag <= tube:
        return 0.0
    k = params.k_g
    return float((_ln_sinh(k * mag) - _ln_sinh(k * tube)) / (k * params.v_g))


def error_trajectory_oracle(e0: float, t, params: GuidanceParams):
    """Closed-form solution e(t) of de/dt = -v_g tanh(k_g e).

    sinh(k_g e) decays exponentially at rate k_g*v_g; the magnitude is
    evaluated in log form so far-field initial errors neither overflow nor
    lose the (invariant) sign of e0.  t may be a scalar or an array.
    """
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0.0):
        raise ValueError("t must be >= 0")
    if e0 == 0.0:
        out = np.zeros_like(t_arr)
    else:
        k = params.k_g
        log_mag = _ln_sinh(k * abs(e0)) - k * params.v_g * t_arr
        big = log_mag > 20.0
        # asinh(exp(L)) == L + ln 2 once exp(L) dwarfs 1
        mag = np.where(big, log_mag + _LN2, np.arcsinh(np.exp(np.where(big, 0.0, log_mag)))) / k
        mag = np.where(t_arr == 0.0, abs(e0), mag)
        out = math.copysign(1.0, e0) * mag
    return float(out) if out.ndim == 0 else out


def _look_angle_scalar(e: float, a: float, k_g: float, direction: int) -> float:
    """Fast scalar branch solution -atan(a) + s*acos(...) (unwrapped)."""
    arg = -math.tanh(k_g * e) / math.sqrt(1.0 + a * a)
    if arg > _ACOS_CLIP:
        arg = _ACOS_CLIP
    elif arg < -_ACOS_CLIP:
        arg = -_ACOS_CLIP
    return -math.atan(a) + direction * math.acos(arg)


def glass_heading(x: float, y: float, curve: StandoffCurve, params: GuidanceParams) -> float:
    """Commanded course at position (x, y): LOS angle plus commanded look angle."""
    d = math.hypot(x, y)
    if d <= 0.0:
        raise NonPositiveRange("vehicle at the origin: LOS angle undefined")
    gamma = math.atan2(y, x)
    e = d - curve.radius_at(gamma)
    a = curve.radius_slope_at(gamma) / d
    return wrap(gamma + _look_angle_scalar(e, a, params.k_g, params.direction))


def commanded_course(state, curve: StandoffCurve, params: GuidanceParams) -> float:
    """Commanded course for an engagement state (anything with .d and .gamma)."""
    e = state.d - radius_at(curve, state.gamma)
    a = coupling(curve, state.gamma, state.d)
    return wrap(state.gamma + _look_angle_scalar(e, a, params.k_g, params.direction))
