"""Standoff paths in polar form d = r(gamma).

All curves are origin-centred, strictly positive and 2*pi-periodic.  The
guidance layer consumes r(gamma) together with the analytic slope dr/dgamma;
differentiating numerically at run time would feed step-size noise into the
commanded course, so each curve carries its closed-form derivative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import NonPositiveRange


@dataclass(frozen=True)
class Circle:
    """Constant-radius standoff path."""

    radius: float

    def __post_init__(self):
        if not self.radius > 0.0:
            raise ValueError(f"radius must be > 0 (got {self.radius})")

    def radius_at(self, gamma: float) -> float:
        return self.radius

    def radius_slope_at(self, gamma: float) -> float:
        return 0.0


@dataclass(frozen=True)
class Ellipse:
    """Origin-centred ellipse: r(g) = a*b / sqrt((b cos g)^2 + (a sin g)^2)."""

    semi_major: float
    semi_minor: float

    def __post_init__(self):
        if not (self.semi_major > 0.0 and self.semi_minor > 0.0):
            raise ValueError("ellipse semi-axes must be > 0")

    def radius_at(self, gamma: float) -> float:
        c, s = math.cos(gamma), math.sin(gamma)
        return self.semi_major * self.semi_minor / math.sqrt(
            (self.semi_minor * c) ** 2 + (self.semi_major * s) ** 2
        )

    def radius_slope_at(self, gamma: float) -> float:
        a, b = self.semi_major, self.semi_minor
        c, s = math.cos(gamma), math.sin(gamma)
        den = (b * c) ** 2 + (a * s) ** 2
        return -a * b * (a * a - b * b) * s * c / den ** 1.5


@dataclass(frozen=True)
class Lame:
    """Superellipse |x/a|^p + |y/b|^p = 1 in polar form.

    The exponent is restricted to p >= 2 so the slope stays continuous
    across the axis crossings (|cos g|^(p-1) vanishes there).
    """

    semi_major: float
    semi_minor: float
    exponent: float

    def __post_init__(self):
        if not (self.semi_major > 0.0 and self.semi_minor > 0.0):
            raise ValueError("lame semi-axes must be > 0")
        if not self.exponent >= 2.0:
            raise ValueError(f"lame exponent must be >= 2 (got {self.exponent})")

    def radius_at(self, gamma: float) -> float:
        p = self.exponent
        c, s = math.cos(gamma), math.sin(gamma)
        total = abs(c / self.semi_major) ** p + abs(s / self.semi_minor) ** p
        return total ** (-1.0 / p)

    def radius_slope_at(self, gamma: float) -> float:
        p = self.exponent
        a, b = self.semi_major, self.semi_minor
        c, s = math.cos(gamma), math.sin(gamma)
        total = abs(c / a) ** p + abs(s / b) ** p
        # d/dg |cos g|^p = -p |cos g|^(p-1) sign(cos g) sin g, likewise for sin
        dtotal = p * (
            abs(s) ** (p - 1.0) * math.copysign(1.0, s) * c / b ** p
            - abs(c) ** (p - 1.0) * math.copysign(1.0, c) * s / a ** p
        )
        return -(1.0 / p) * total ** (-1.0 / p - 1.0) * dtotal


StandoffCurve = Union[Circle, Ellipse, Lame]


def radius_at(curve: StandoffCurve, gamma: float) -> float:
    """Desired standoff range r(gamma) in metres."""
    return curve.radius_at(gamma)


def radius_slope_at(curve: StandoffCurve, gamma: float) -> float:
    """Angular derivative dr/dgamma in metres per radian."""
    return curve.radius_slope_at(gamma)


def coupling(curve: StandoffCurve, gamma: float, d: float) -> float:
    """Geometry coupling a = r'(gamma)/d entering the look-angle constraint."""
    if not d > 0.0:
        raise NonPositiveRange(f"range must be > 0 (got {d})")
    return curve.radius_slope_at(gamma) / d
