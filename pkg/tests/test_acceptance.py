"""One test per primary acceptance criterion, each at its stated tolerance.

A PASS/FAIL line per criterion is printed in the terminal summary.  Running
this file directly prints the same lines without pytest.
"""

import pytest

from ldgraph import verify

SEED = 7
RUNTIME_LIMITS = {
    "anchors": 1.0,
    "identities": 1.0,
    "mantel": 10.0,
    "turan": 60.0,
    "graphon": 1.0,
    "symmetrization": 30.0,
    "annulus": 5.0,
    "annealing": 120.0,
    "crossover": 60.0,
}


@pytest.mark.parametrize("key", list(verify.CRITERIA))
def test_criterion(key, report_line):
    check = verify.CRITERIA[key](seed=SEED)
    within_time = check.seconds < RUNTIME_LIMITS[key]
    ok = check.passed and within_time
    report_line(f"{'PASS' if ok else 'FAIL'} {check.name}: {check.seconds:.2f} s "
                f"(limit {RUNTIME_LIMITS[key]:.0f} s) {check.detail}")
    assert check.passed, check.detail
    assert within_time, f"{check.name} took {check.seconds:.1f} s"


if __name__ == "__main__":
    for key, fn in verify.CRITERIA.items():
        c = fn(seed=SEED)
        print(c.line(), c.detail)
