import pytest

_ACCEPTANCE = []


@pytest.fixture
def report():
    """Record one acceptance line: ``report(criterion, passed, detail)``."""

    def _add(criterion: str, passed: bool, detail: str = "") -> bool:
        _ACCEPTANCE.append((criterion, bool(passed), detail))
        return bool(passed)

    return _add


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {criterion}  {detail}")
