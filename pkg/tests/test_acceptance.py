"""The ten acceptance criteria, one test each, at the stated tolerances.

Each test prints a single pass/fail line; the lines are also collected into an
"acceptance criteria" section of the terminal summary.
"""

import pytest

from podles.verify import SUITES, VerifyConfig, run_suite

from conftest import ACCEPTANCE_LINES

CRITERIA = [
    "relations",
    "representation",
    "continuation",
    "residues",
    "traces",
    "boundedness",
    "operator-identity",
    "cocycle-formula",
    "cocycle",
    "trace-class",
]


@pytest.fixture(scope="module")
def verify_config(ctx):
    return VerifyConfig(ctx=ctx)


def test_every_criterion_has_a_suite():
    assert sorted(CRITERIA) == sorted(SUITES)


@pytest.mark.parametrize("number,name", list(enumerate(CRITERIA, start=1)), ids=CRITERIA)
def test_criterion(verify_config, number, name):
    result = run_suite(name, verify_config)
    assert result.criterion == number
    line = result.line()
    ACCEPTANCE_LINES.append(line)
    print(line)
    for check in result.failures:
        print(f"    failed: {check.label}: deviation {check.deviation:.3e} (tol {check.tol:.1e})")
    assert result.passed, line
