"""Terminal reporting hook for the acceptance-line buffer in support.py."""
from support import ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    """Echo one PASS/FAIL line per acceptance check after the test summary."""
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
