"""The acceptance gate: one test per criterion, each printing its pass line.

Run with `pytest -s tests/test_acceptance.py` to see the per-criterion lines,
or `garsidehyp accept` for the same checks from the command line.
"""

import pytest

from garsidehyp import acceptance


@pytest.mark.parametrize("number", sorted(acceptance.CRITERIA))
def test_criterion(number):
    result = acceptance.CRITERIA[number]()
    print(result.line())
    assert result.passed, result.details
