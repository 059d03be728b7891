import pytest

# criterion id -> (passed, detail); filled by tests/test_acceptance.py
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    def record(name: str, passed: bool, detail: str = "") -> None:
        ACCEPTANCE[name] = (passed, detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda k: (int(k.split()[0].rstrip("abcd")), k)):
        passed, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")
