import pytest

import glasskit as gk
from glasskit import benchmarks


@pytest.fixture(scope="session")
def ideal_traces():
    """Ideal-dynamics benchmark runs, keyed by (side, gain)."""
    return {
        (side, gain): gk.run_scenario(benchmarks.ideal_scenario(side, gain))
        for side in ("outside", "inside")
        for gain in benchmarks.GAINS
    }


@pytest.fixture(scope="session")
def mismatch_traces():
    """Heading-mismatch benchmark runs, keyed by case name."""
    return {
        case.case: (case, gk.run_scenario(benchmarks.mismatch_scenario(case)))
        for case in benchmarks.HEADING_MISMATCH_CASES
    }


@pytest.fixture(scope="session")
def quad_trace():
    """Full-length 6DOF inspection run with the nominal parameter set."""
    return gk.run_6dof_inspection(gk.QuadSimConfig())
