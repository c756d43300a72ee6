"""The twelve acceptance criteria, each at its stated tolerance.

Every criterion prints one pass/fail line; the lines are also collected
and repeated in the terminal summary by ``conftest.py``.
"""

import pytest

from freelevy.acceptance import CRITERIA, run_criterion

ACCEPTANCE_LINES = []


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"{c[0]:02d}-{c[1]}" for c in CRITERIA])
def test_criterion(number):
    result = run_criterion(number)
    line = result.line()
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert result.passed, line
