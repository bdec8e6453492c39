"""Exception types shared across the toolkit."""


class GlasskitError(Exception):
    """Base class for all toolkit errors."""


class NonPositiveRange(GlasskitError):
    """Range to the origin is zero or negative; the polar geometry is singular."""


class FeasibilityViolation(GlasskitError):
    """Arcsine shaping argument left the open interval (-1, 1)."""


class InvalidGeometry(GlasskitError):
    """Engagement geometry is outside the domain of the requested operation."""


class InvalidTube(GlasskitError):
    """Settling tube half-width must be positive."""


class SimError(GlasskitError):
    """Simulation failed at run time."""


class RangeCollapse(SimError):
    """Vehicle range collapsed below the polar singularity guard (1e-6 m)."""


class NonFinite(SimError):
    """A simulated state stopped being finite."""


class ConfigError(GlasskitError):
    """Scenario configuration is malformed or violates an invariant."""
