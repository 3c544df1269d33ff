"""The eight acceptance criteria, one test each.

A one-line verdict per criterion is printed in the terminal summary (see conftest).
"""

import pytest

from e6weyl.acceptance import TITLES, run_all

@pytest.fixture(scope="module")
def results(record_verdicts):
    criteria, _, _ = run_all(jobs=1)
    record_verdicts(criteria)
    return {c.number: c for c in criteria}


@pytest.mark.parametrize("number", sorted(TITLES))
def test_criterion(results, number):
    c = results[number]
    assert c.ok, f"criterion {number} failing sub-checks: {c.failures}; details: {c.details}"
