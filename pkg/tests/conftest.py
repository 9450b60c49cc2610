import pytest


def popcount(w):
    return bin(w).count("1")


@pytest.fixture(scope="session")
def pascal():
    """Pascal triangle rows 0..256 built by repeated addition."""
    rows = [[1]]
    for _ in range(256):
        prev = rows[-1]
        rows.append([1] + [prev[i] + prev[i + 1] for i in range(len(prev) - 1)] + [1])
    return rows


ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, note in ACCEPTANCE_RESULTS:
        line = f"{'PASS' if passed else 'FAIL'}  {name}"
        terminalreporter.write_line(line + (f"  ({note})" if note else ""))
