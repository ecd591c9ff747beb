import pytest

ACCEPTANCE = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance line: call with (number, title, passed)."""
    def record(number, title, passed):
        ACCEPTANCE[number] = (title, bool(passed))
        print(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}")
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE, key=lambda k: [int(x) if x.isdigit() else x for x in k.split(".")]):
        title, ok = ACCEPTANCE[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {number:>5}  {title}")
