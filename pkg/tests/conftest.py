import sys


def pytest_terminal_summary(terminalreporter):
    """Echo the acceptance pass/fail lines after the run, capture or not."""
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "ACCEPTANCE_LINES", None) if module else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
