"""Standoff-inspection guidance toolkit.

Bounded tanh look-angle shaping over polar standoff curves, with closed-form
settling analytics, a planar engagement simulator, an arcsine baseline for
comparison and a 6DOF quadrotor embedding.
"""

from .angles import wrap
from .arcsine import (
    ArcsineParams,
    arcsine_heading,
    arcsine_look_angle,
    match_arcsine_gain,
    normalized_error,
)
from .config import (
    ScenarioConfig,
    load_quad,
    load_scenario,
    parse_quad,
    parse_scenario,
    serialize_scenario,
)
from .curves import Circle, Ellipse, Lame, StandoffCurve, coupling, radius_at, radius_slope_at
from .errors import (
    ConfigError,
    FeasibilityViolation,
    GlasskitError,
    InvalidGeometry,
    InvalidTube,
    NonFinite,
    NonPositiveRange,
    RangeCollapse,
    SimError,
)
from .glass import (
    GuidanceParams,
    LookAngleSolution,
    commanded_course,
    constraint_cos_argument,
    error_rate,
    error_trajectory_oracle,
    glass_heading,
    look_angle_slope_bound,
    lyapunov_value,
    shaping,
    solve_look_angle,
    tube_entry_time,
)
from .planar import (
    CourseChannel,
    EngagementState,
    SimTrace,
    max_turn_rate,
    measure_tube_entry,
    run_scenario,
    simulate,
    step_kinematics,
)
from .quadrotor import (
    InnerLoopParams,
    OuterLoopParams,
    QuadrotorParams,
    QuadrotorState,
    QuadSimConfig,
    QuadTrace,
    acceleration_command,
    acceleration_to_attitude,
    course_channel_step,
    filter_course_command,
    final_lap_slice,
    mix_rotors,
    run_6dof_inspection,
    step_quadrotor,
    velocity_reference,
)

__version__ = "0.1.0"
