"""Angle helpers.  Everything internal is radians, wrapped to (-pi, pi]."""

import math

import numpy as np


def wrap(angle):
    """Wrap an angle (scalar or array) into (-pi, pi] via atan2(sin, cos)."""
    if isinstance(angle, np.ndarray):
        return np.arctan2(np.sin(angle), np.cos(angle))
    return math.atan2(math.sin(angle), math.cos(angle))
