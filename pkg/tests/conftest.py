import pytest

VERDICTS: list[str] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running acceptance computations")


@pytest.fixture
def verdict():
    """Record one PASS/FAIL line; returns the boolean so tests can assert on it."""

    def record(criterion: int, ok: bool, detail: str) -> bool:
        line = f"CRITERION {criterion:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        VERDICTS.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(VERDICTS, key=lambda s: int(s.split(":")[0].split()[1])):
            terminalreporter.write_line(line)
