import pytest

from distinct_cycles.catalog import validate_params

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def p1():
    return validate_params(r=1)


@pytest.fixture(scope="session")
def p1_simple():
    return validate_params(r=1, mode="simple")


@pytest.fixture(scope="session")
def record():
    def _record(criterion: str, ok: bool, detail: str = "") -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
