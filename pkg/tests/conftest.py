import pytest

_CRITERIA: dict[int, tuple[bool, str]] = {}


class CriterionRecorder:
    def __init__(self, number: int):
        self.number = number
        self.detail = ""
        _CRITERIA[number] = (False, "did not finish")

    def done(self, passed: bool, detail: str) -> None:
        _CRITERIA[self.number] = (bool(passed), detail)
        self.detail = detail


@pytest.fixture
def criterion(request):
    marker = request.node.get_closest_marker("criterion")
    return CriterionRecorder(marker.args[0])


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        passed, detail = _CRITERIA[number]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {detail}")
