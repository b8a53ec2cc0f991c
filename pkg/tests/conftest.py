"""Shared fixtures and the acceptance-line reporter.

Acceptance tests register one PASS/FAIL line each through
``record_acceptance``; the terminal-summary hook replays them after the run
so they stay visible even under output capture.
"""

import os

import numpy as np
import pytest
from hypothesis import settings

from skewcal.linalg import DensityMatrix, HermitianMatrix

settings.register_profile("suite", deadline=None)
settings.load_profile("suite")

FIXTURES_DIR = os.path.join(os.path.dirname(__file__), "fixtures")

ACCEPTANCE_LINES: list[str] = []


def record_acceptance(number: int, ok: bool, description: str) -> None:
    line = f"ACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} - {description}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)


@pytest.fixture
def fixtures_dir() -> str:
    return FIXTURES_DIR


@pytest.fixture
def fixture_rho() -> DensityMatrix:
    return DensityMatrix(np.diag([0.75, 0.25]).astype(complex))


@pytest.fixture
def fixture_a() -> HermitianMatrix:
    return HermitianMatrix([[0.0, 1.0], [1.0, 0.0]])


@pytest.fixture
def fixture_b() -> HermitianMatrix:
    return HermitianMatrix([[0.0, -1.0j], [1.0j, 0.0]])
