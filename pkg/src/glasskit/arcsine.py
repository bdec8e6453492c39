"""Arcsine look-angle baseline used by the comparative study.

The baseline prescribes lam = pi/2 + asin(k_d * e) directly, which is only
real while |k_d * e| < 1: far-field starts force the gain down, the
structural limitation the tanh shaping removes.  The comparison harness
matches the baseline's initial commanded heading to the tanh law's via an
explicit gain map so any later divergence comes from the shaping itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .angles import wrap
from .errors import FeasibilityViolation, InvalidGeometry, NonPositiveRange
from .glass import _ACOS_CLIP


@dataclass(frozen=True)
class ArcsineParams:
    """Baseline gain and standoff radius.

    normalized=True evaluates the law on e_n = -(1 - r_d/d) instead of the
    raw metre error, the form used for gain-matched comparisons.
    """

    k_d: float
    r_d: float
    normalized: bool = True

    def __post_init__(self):
        if not self.r_d > 0.0:
            raise ValueError(f"r_d must be > 0 (got {self.r_d})")


def arcsine_look_angle(e: float, params: ArcsineParams) -> float:
    """Baseline look angle pi/2 + asin(k_d * e).

    Raises FeasibilityViolation when |k_d * e| >= 1 (the far-field
    breakdown of the construction).
    """
    u = params.k_d * e
    if abs(u) >= 1.0:
        raise FeasibilityViolation(
            f"|k_d * e| = {abs(u):.6g} >= 1: arcsine shaping undefined"
        )
    return 0.5 * math.pi + math.asin(u)


def normalized_error(d: float, r_d: float) -> float:
    """Normalised range error -(1 - r_d/d); tends to -1 far outside the orbit."""
    if not d > 0.0:
        raise NonPositiveRange(f"range must be > 0 (got {d})")
    return -(1.0 - r_d / d)


def match_arcsine_gain(d_0: float, r_d: float, k_g: float) -> float:
    """Baseline gain that reproduces the tanh law's initial heading.

    For a circular standoff the tanh law's initial look angle satisfies
    cos(sigma0) = -tanh(k_g * (d_0 - r_d)); equating initial look angles
    gives k_d = sin(sigma0 - pi/2) / e_n0 with e_n0 = -(1 - r_d/d_0).
    Defined for outside starts only.
    """
    if not d_0 > r_d:
        raise InvalidGeometry(
            f"gain matching needs an outside start (d_0 = {d_0}, r_d = {r_d})"
        )
    arg = -math.tanh(k_g * (d_0 - r_d))
    arg = max(-_ACOS_CLIP, min(_ACOS_CLIP, arg))
    sigma0 = math.acos(arg)
    return math.sin(sigma0 - 0.5 * math.pi) / normalized_error(d_0, r_d)


def arcsine_heading(x: float, y: float, params: ArcsineParams) -> float:
    """Commanded course at (x, y): LOS angle plus the baseline look angle."""
    d = math.hypot(x, y)
    if d <= 0.0:
        raise NonPositiveRange("vehicle at the origin: LOS angle undefined")
    gamma = math.atan2(y, x)
    err = normalized_error(d, params.r_d) if params.normalized else d - params.r_d
    return wrap(gamma + arcsine_look_angle(err, params))
