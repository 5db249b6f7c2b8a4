"""One test per acceptance criterion, at the documented tolerances.

Each test prints its measured values as a single PASS/FAIL line; the lines are
also collected into the terminal summary. Run this file directly for the lines
without pytest.
"""

import pytest

from revival import validation

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []

CRITERIA = [
    ("C1", validation.gauss_oracle),
    ("C2", validation.free_revival_identity),
    ("C3", validation.full_period_revival),
    ("C4", validation.half_period_mirror),
    ("C5", validation.free_spectrum),
    ("C6", validation.mathieu_cross_solver),
    ("C7", validation.mathieu_perturbation),
    ("C8", validation.eigenvalue_decay),
    ("C9", validation.biorthogonality),
    ("C10", validation.selfadjoint_conservation),
    ("C11", validation.theorem_certification),
    ("C12", validation.mean_shift_covariance),
]


@pytest.mark.parametrize("key,check", CRITERIA, ids=[k for k, _ in CRITERIA])
def test_criterion(key, check):
    result = check()
    line = result.line()
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert result.key == key
    assert result.passed, line


if __name__ == "__main__":
    for _, check in CRITERIA:
        print(check().line(), flush=True)
