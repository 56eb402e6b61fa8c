import pytest

_acceptance_lines = []


@pytest.fixture
def report():
    """Record a one-line pass/fail verdict for an acceptance criterion."""
    def _record(number, title, ok, detail=""):
        status = "PASS" if ok else "FAIL"
        line = f"[{status}] criterion {number}: {title}"
        if detail:
            line += f" ({detail})"
        _acceptance_lines.append((number, line))
        return ok
    return _record


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_lines:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_acceptance_lines):
        terminalreporter.write_line(line)
