import pytest
from hypothesis import HealthCheck, settings

# property tests are reproducible run to run
settings.register_profile(
    "repro",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repro")

from birendo.bipoly import parse
from birendo.endo import PlaneEndo


def P(text):
    return parse(text)


def E(text):
    return PlaneEndo.parse(text)


@pytest.fixture
def poly():
    return P


@pytest.fixture
def endo():
    return E
