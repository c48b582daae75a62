"""End-to-end acceptance checks, one per criterion, each printing a pass/fail line."""

from __future__ import annotations

import pytest

from icyf.checks import SUITES

# (suite, runtime limit in seconds)
CRITERIA = [
    ("seat-curve", 1),
    ("half-vote", 1),
    ("game1-oracle", 600),
    ("convergence", 5),
    ("game2", 120),
    ("graph", 60),
    ("game3", 600),
    ("icif", 300),
    ("invariants", 120),
]


@pytest.mark.acceptance
@pytest.mark.parametrize("suite, limit", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(suite, limit):
    result = SUITES[suite]()
    ok = result.passed and result.seconds < limit
    print(f"\n{'PASS' if ok else 'FAIL'} {result.line()} [limit {limit}s]")
    assert result.passed, "\n".join(result.failures[:20])
    assert result.seconds < limit, f"took {result.seconds:.1f}s, limit {limit}s"
