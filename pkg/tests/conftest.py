import pytest

ACCEPTANCE = {}


def record(criterion, passed, note=""):
    ACCEPTANCE[criterion] = (passed, note)
    line = f"criterion {criterion}: {'PASS' if passed else 'FAIL'}" + (f" ({note})" if note else "")
    print(line)
    return line


@pytest.fixture
def acceptance_record():
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        passed, note = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if passed else 'FAIL'}" + (f" ({note})" if note else ""))
