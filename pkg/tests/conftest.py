import os
import sys
from fractions import Fraction

import pytest

# Add the project root to the import path
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

GRID = [Fraction(-1, 4), Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(1), Fraction(7, 2)]


@pytest.fixture
def mu_grid():
    return list(GRID)


@pytest.fixture
def assert_passed():
    """Fail with the witness of the first failed, non-informational record."""

    def check(records):
        assert records, "no records produced"
        for record in records:
            if record.informational or record.skipped:
                continue
            assert record.passed, f"{record.suite}/{record.identity} {record.params}: {record.witness}"

    return check
