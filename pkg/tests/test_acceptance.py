"""Release checklist: every criterion at its pinned tolerance, one line each."""

import pytest

from spinchan import verify


@pytest.mark.parametrize(
    "criterion",
    verify.ACCEPTANCE_CRITERIA,
    ids=[fn.__name__.removeprefix("_criterion_") for fn in verify.ACCEPTANCE_CRITERIA],
)
def test_criterion(criterion):
    result = criterion()
    status = "PASS" if result.passed else "FAIL"
    detail = f" [{result.detail}]" if result.detail else ""
    print(f"{status} {result.name}{detail}")
    assert result.passed, f"{result.name}: {result.detail}"
