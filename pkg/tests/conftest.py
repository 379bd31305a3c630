import os
import sys

import pytest
from hypothesis import HealthCheck, settings

from omegac.adc import BasedADC

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def k_loop():
    """Two parallel arrows in opposite directions."""
    return BasedADC({"x": 0, "y": 0, "f": 1, "g": 1},
                    {"f": {"y": 1, "x": -1}, "g": {"x": 1, "y": -1}}, {"x": 1, "y": 1})


@pytest.fixture
def k_u():
    """A degree-2 generator with zero boundary."""
    return BasedADC({"u": 2}, {}, {})


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
