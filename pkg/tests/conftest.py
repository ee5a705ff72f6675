import pytest

from adrtools.a2cases import a2_algebra
from adrtools.construct import build_A
from adrtools.quiver import build_path_algebra, parse_quiver_file
from adrtools.systems import enumerate_semisimple_systems, jacobson_system

TRUNCATED_POLY = "vertex v\narrow x v v\nrelation x*x*x = 0\n"

_criteria: dict = {}


@pytest.fixture(scope="session")
def a2():
    return a2_algebra()


@pytest.fixture(scope="session")
def adr(a2):
    """A(R, I) for the Jacobson system of a -> b."""
    return build_A(a2, jacobson_system(a2))


@pytest.fixture(scope="session")
def kx3():
    return build_path_algebra(parse_quiver_file(TRUNCATED_POLY))


@pytest.fixture(scope="session")
def kx3_adr(kx3):
    return build_A(kx3, jacobson_system(kx3))


@pytest.fixture(scope="session")
def a2_corpus(a2):
    return enumerate_semisimple_systems(a2, 2)


@pytest.fixture(scope="session")
def a2_built(a2, a2_corpus):
    return [build_A(a2, s) for s in a2_corpus]


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    number, title = marker.args
    _criteria[number] = (title, report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, outcome = _criteria[number]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {verdict}  {title}")
