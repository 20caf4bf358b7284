import numpy as np
import pytest

from qportrait import _fallback
from qportrait.states import random_mixed_hs

try:
    from qportrait import _kernels
except ImportError:
    _kernels = None

KERNEL_MODULES = [pytest.param(_fallback, id="python")]
if _kernels is not None:
    KERNEL_MODULES.insert(0, pytest.param(_kernels, id="cython"))


@pytest.fixture(params=KERNEL_MODULES)
def kernels(request):
    """Each available kernel implementation in turn."""
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def hs_pair():
    def make(dim, seed):
        return random_mixed_hs(dim, 2 * seed), random_mixed_hs(dim, 2 * seed + 1)

    return make


# -- acceptance summary ----------------------------------------------------------

_criteria = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = _criteria.get(report.nodeid)
    if marker is not None:
        marker["outcome"] = report.outcome


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            number, title = mark.args
            _criteria[item.nodeid] = {"number": number, "title": title, "outcome": "not run"}


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for entry in sorted(_criteria.values(), key=lambda e: e["number"]):
        verdict = {"passed": "PASS", "failed": "FAIL"}.get(entry["outcome"], entry["outcome"].upper())
        terminalreporter.write_line(f"criterion {entry['number']}: {verdict}  {entry['title']}")
