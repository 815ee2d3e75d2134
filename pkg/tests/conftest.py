import sys

import pytest

from gbe.density import density_from_resolvent
from gbe.verify import resolvent


@pytest.fixture(scope="session")
def ws6():
    return list(resolvent(6))


@pytest.fixture(scope="session")
def ws10():
    return list(resolvent(10))


@pytest.fixture(scope="session")
def densities(ws6):
    return [density_from_resolvent(w, l) for l, w in enumerate(ws6)]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, _ in mod.CRITERIA:
        if name in mod.RESULTS:
            terminalreporter.write_line(mod.RESULTS[name])
