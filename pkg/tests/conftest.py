import math

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "ci",
    derandomize=True,
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")

from diracstep import StepParameters

RT3 = math.sqrt(3.0)


@pytest.fixture
def anchor_kw():
    """Hand-checkable kinematics: E1 = E2 = 2, pi1 = -pi2 = sqrt(3)."""
    return dict(m=1.0, q=1.0, p=RT3, a1=0.0, a2=2.0 * RT3)


@pytest.fixture
def anchor_params(anchor_kw):
    return StepParameters(tau=0.3, **anchor_kw)
