"""One test per acceptance criterion; each records a PASS/FAIL line with timing."""

import pytest

from weakcong.acceptance import CRITERIA, run


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{c.number:02d}" for c in CRITERIA])
def test_criterion(criterion, acceptance_log):
    outcome = run(criterion)
    print(outcome.line())
    acceptance_log.append(outcome.line())
    assert outcome.ok, outcome.detail
