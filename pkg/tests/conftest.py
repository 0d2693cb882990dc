import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

# make `import oracles` work from the tests directory
sys.path.insert(0, str(Path(__file__).parent))

# first call into a numba kernel pays compile time; wall-clock deadlines
# would turn that into flaky failures
settings.register_profile(
    "pkg",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("pkg")

CRITERION_LINES: list = []


@pytest.fixture(scope="session")
def criterion():
    """Record one human-readable pass/fail line per acceptance criterion."""
    def record(line: str) -> None:
        CRITERION_LINES.append(line)
    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not CRITERION_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in CRITERION_LINES:
        terminalreporter.write_line(line)
