import contextlib

import pytest

_RESULTS = []


class Criteria:
    @contextlib.contextmanager
    def check(self, name):
        try:
            yield
        except BaseException:
            _RESULTS.append(("FAIL", name))
            raise
        _RESULTS.append(("PASS", name))


@pytest.fixture
def criterion():
    return Criteria()


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for verdict, name in _RESULTS:
        terminalreporter.write_line(f"{verdict}: {name}")
