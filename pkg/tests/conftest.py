import pytest

_CRITERIA = []


@pytest.fixture
def criterion():
    """Record one acceptance line: criterion(number, passed, text)."""

    def record(number, passed, text):
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {text}"
        _CRITERIA.append((number, line))
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_CRITERIA, key=lambda item: item[0]):
            terminalreporter.write_line(line)
