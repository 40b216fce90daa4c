"""One check per acceptance criterion.  Each prints a pass/fail line, and the
lines are repeated together in the terminal summary."""
import pytest

from greedylab.acceptance import CRITERIA, format_line

LINES = []


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: c.__name__)
def test_criterion(criterion):
    result = criterion(7)
    line = format_line(result)
    LINES.append((result.number, line))
    print(line)
    assert result.passed, result.detail
