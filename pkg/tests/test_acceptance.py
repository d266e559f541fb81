"""Acceptance criteria 1-14, one test each.

Each test prints a single PASS/FAIL line; the lines are repeated in the
pytest terminal summary.  Run this file directly for the table alone.
"""

import pytest

from conftest import ACCEPTANCE
from nilhecke.verify import CRITERIA, SUITES

TITLES = {
    1: "Schubert lists for U(2), U(3), Sp(2)",
    2: "reflection matrices for U(2), U(3), Sp(2)",
    3: "torsion indices",
    4: "antisymmetrizer identity",
    5: "reduced-word independence and braid relations",
    6: "nil-Hecke relations",
    7: "Leibniz rule",
    8: "dual basis and adjointness",
    9: "psi projection",
    10: "discriminant operator identity",
    11: "low-rank table rows",
    12: "strictness witnesses",
    13: "homogeneous spaces",
    14: "Schubert expansion round trip and freeness",
}


def run_criterion(n):
    results = SUITES[CRITERIA[n]]()
    failed = [r for r in results if not r.passed]
    status = "PASS" if not failed else "FAIL"
    line = f"criterion {n:>2} [{status}] {TITLES[n]} ({len(results) - len(failed)}/{len(results)} checks)"
    if failed:
        line += "; first failure: " + failed[0].line()
    return not failed, line, results


@pytest.mark.parametrize("n", sorted(TITLES))
def test_criterion(n):
    ok, line, results = run_criterion(n)
    ACCEPTANCE[n] = line
    print(line)
    assert results, "suite ran no checks"
    assert ok, line


if __name__ == "__main__":
    for n in sorted(TITLES):
        print(run_criterion(n)[1])
