"""One line per acceptance criterion.

Checks tagged as a conflict reproduce a value that cannot hold as stated;
they are printed as FAIL and must fail exactly as tagged.
"""

import pytest

from siegelcov.acceptance import CORE, STRETCH, run_criterion

LINES: list[str] = []  # echoed in the terminal summary by conftest

EXPECTED_CONFLICTS = {
    3: {"yoshida-p2-constant"},
    4: {"weight-26-conjugate"},
    5: {"chi18-7-ratio"},
}


def _report(n):
    crit = run_criterion(n)
    print(crit.line())
    LINES.append(crit.line())
    return crit


@pytest.mark.parametrize("n", sorted(CORE))
def test_core_criterion(n):
    crit = _report(n)
    assert crit.error is None, crit.error
    failed = [i for i in crit.items if not i.passed]
    assert {i.conflict for i in failed} == EXPECTED_CONFLICTS.get(n, set())
    assert crit.acceptable


@pytest.mark.stretch
@pytest.mark.parametrize("n", sorted(STRETCH))
def test_stretch_criterion(n):
    crit = _report(n)
    assert crit.passed, crit.line()
