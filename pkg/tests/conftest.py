import pytest

from gqm.gf import field_of_order

SMALL_Q = (2, 3, 4, 5, 7, 8, 9)

# lines recorded by test_acceptance.py, echoed at the end of the run
ACCEPTANCE_LINES = []


@pytest.fixture(params=SMALL_Q, ids=lambda q: f"q{q}")
def ctx(request):
    return field_of_order(request.param)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
