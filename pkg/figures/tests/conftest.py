"""Terminal reporting hook for the acceptance-line buffer in fig_support.py."""
from fig_support import ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    """Echo one PASS/FAIL line per figures acceptance check after the summary."""
    if ACCEPTANCE_LINES:
        terminalreporter.section("figures acceptance")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
