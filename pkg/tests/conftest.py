import random

import pytest

from rainbow_schur import make_family


@pytest.fixture
def odds5():
    return make_family(5, 2, [[1, 3, 5]] * 3)


@pytest.fixture
def rng():
    return random.Random(20240613)


# (criterion id, passed, detail) rows filled in by test_acceptance.py
ACCEPTANCE_RESULTS: list = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for ac, passed, detail in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"{ac}: {'PASS' if passed else 'FAIL'}  {detail}")
