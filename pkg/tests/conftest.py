import pytest

ACCEPTANCE_LINES: list = []


@pytest.fixture
def report():
    """Record one acceptance line; the lines are printed in the terminal summary."""

    def _record(label: str, passed: bool, detail: str = ""):
        flag = "PASS" if passed else "FAIL"
        ACCEPTANCE_LINES.append(f"[{flag}] {label}: {detail}".rstrip(": "))
        return passed

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
