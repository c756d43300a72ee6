import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "repo",
    deadline=None,
    max_examples=25,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@pytest.fixture
def zgrid():
    """Points of the lower half-plane shared by the cumulant tests."""
    re = np.array([-2.0, -0.7, -0.1, 0.0, 0.3, 1.5])
    im = np.array([-0.05, -0.4, -1.0, -3.0])
    return (re[:, None] + 1j * im[None, :]).ravel()


def pytest_terminal_summary(terminalreporter):
    from tests.test_acceptance import ACCEPTANCE_LINES

    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
