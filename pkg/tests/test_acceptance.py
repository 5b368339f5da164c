"""One line per acceptance criterion at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -s`` to see the report.
"""

import pytest

from netentangle import verification


@pytest.mark.parametrize("key", list(verification.CRITERIA))
def test_criterion(key):
    (result,) = verification.run([key])
    print(result.line())
    assert result.passed, result.detail
