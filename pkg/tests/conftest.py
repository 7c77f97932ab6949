import pytest

RESULTS: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Call with (number, passed, detail); the line is printed now and in the final summary."""

    def record(number: int, passed: bool, detail: str) -> bool:
        RESULTS[number] = (passed, detail)
        print(_line(number, passed, detail))
        return passed

    return record


def _line(number, passed, detail):
    return f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}"


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(_line(number, *RESULTS[number]))
