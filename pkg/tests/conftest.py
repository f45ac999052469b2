import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_CRITERIA = {}


@pytest.fixture
def report_criterion():
    """Record one pass/fail line per acceptance criterion."""

    def record(number, passed, seconds, limit, detail=""):
        status = "PASS" if passed and seconds < limit else "FAIL"
        line = f"criterion {number}: {status}  ({seconds:.2f}s, limit {limit:g}s)"
        if detail:
            line += f"  {detail}"
        _CRITERIA[number] = line
        print(line)
        return status == "PASS"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        terminalreporter.write_line(_CRITERIA[n])
