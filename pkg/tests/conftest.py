import os

import pytest
from hypothesis import HealthCheck, settings

# derandomized so the property tests are reproducible run to run
settings.register_profile("ci", derandomize=True, deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))

# the stretch criterion runs in well under a minute; SIEGELCOV_SKIP_STRETCH=1 skips it
SKIP_STRETCH = os.environ.get("SIEGELCOV_SKIP_STRETCH") == "1"


def pytest_collection_modifyitems(config, items):
    if not SKIP_STRETCH:
        return
    skip = pytest.mark.skip(reason="SIEGELCOV_SKIP_STRETCH is set")
    for item in items:
        if "stretch" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
