"""Runs every acceptance criterion at its stated tolerance and prints one
pass/fail line per criterion."""

import pytest

from burkill.verify import ALL_CHECKS, run_all


@pytest.fixture(scope="module")
def results():
    out = run_all()
    for r in out:
        print(r.line())
    return {r.criterion: r for r in out}


@pytest.mark.parametrize("criterion", sorted(ALL_CHECKS))
def test_criterion(results, criterion):
    result = results[criterion]
    print(result.line())
    assert result.passed, result.detail
