import os

import pytest
from hypothesis import HealthCheck, settings

from planar_cayley.scheme import LabelingScheme, TypeVector

# fixtures are immutable schemes, so sharing them across examples is harmless
settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture])
settings.register_profile("thorough", max_examples=500, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def chaboud():
    # the degree-8 example: sigma = (1)(2 7)(3)(4 5)(6 8), indirect 2,6,7,8
    return LabelingScheme.from_cycles(8, [(1,), (3,), (2, 7), (4, 5), (6, 8)], indirect=[2, 6, 7, 8])


@pytest.fixture
def chaboud_tv():
    return TypeVector((3, 4, 4, 3, 4, 3, 4, 3))


@pytest.fixture
def snub():
    # labeling used by the published snub cube presentation
    return LabelingScheme.from_cycles(5, [(1, 2), (3,), (4, 5)])


@pytest.fixture
def snub_tv():
    return TypeVector((4, 3, 3, 3, 3))


@pytest.fixture
def z2():
    return LabelingScheme.from_cycles(4, [(1, 3), (2, 4)])


# ---------------------------------------------------------------- acceptance summary


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when != "call" and not report.failed:
        return
    results = item.config.stash.setdefault(_RESULTS, {})
    n, title = mark.args
    ok = report.passed and results.get(n, (True, title))[0]
    results[n] = (ok, title)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(_RESULTS, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, title = results[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}")


_RESULTS = pytest.StashKey[dict]()
