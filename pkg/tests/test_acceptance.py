"""Acceptance gate: every registered criterion must pass.

Each criterion prints one PASS/FAIL line with its measured numbers, so a
plain ``pytest -v tests/test_acceptance.py -s`` doubles as the release
checklist.  The same registry backs ``dephaser accept``.
"""

import pytest

from dephaser.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize(
    "index", range(1, len(CRITERIA) + 1),
    ids=[name.replace(" ", "-").replace(",", "") for name, _ in CRITERIA])
def test_criterion(index):
    result = run_criterion(index)
    line = (f"[{result.index:2d}/{len(CRITERIA)}] "
            f"{'PASS' if result.passed else 'FAIL'} {result.name}: {result.detail}")
    print(line)
    assert result.passed, line
