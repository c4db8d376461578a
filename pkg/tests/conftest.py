import sys

import pytest

from nilherm.forms import use_backend
from nilherm.kernels import available_backends


@pytest.fixture(params=available_backends())
def backend(request):
    with use_backend(request.param):
        yield request.param


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
