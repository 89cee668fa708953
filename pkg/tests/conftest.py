import re

import pytest

from benfordqpt.quadrature import QuadratureConfig

# criterion id -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE_LOG = {}


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LOG


@pytest.fixture(scope="session")
def cfg():
    return QuadratureConfig()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LOG:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LOG, key=lambda k: (int(re.match(r"\d+", k).group()), k)):
        passed, detail = ACCEPTANCE_LOG[key]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] criterion {key}: {detail}")
