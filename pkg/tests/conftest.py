import pytest

_RESULTS = []


@pytest.fixture(scope="session")
def criterion():
    """Record one PASS/FAIL line per acceptance criterion.

    Call as ``criterion(key, ok, detail)``; the lines are printed immediately
    and repeated in the terminal summary.
    """

    def record(key, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] {key}: {detail}"
        _RESULTS.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in _RESULTS:
            terminalreporter.write_line(line)
