import pytest

from megalie.sbve import build_truncated_algebra, generators


@pytest.fixture(scope="session")
def gs4():
    return generators(0, 4)


@pytest.fixture(scope="session")
def g4(gs4):
    return build_truncated_algebra(gs4)


@pytest.fixture(scope="session")
def g5():
    return build_truncated_algebra(generators(0, 5))


@pytest.fixture(scope="session")
def closure4(g4):
    from megalie.exactalg import megaideal_closure

    return megaideal_closure(g4)


@pytest.fixture(scope="session")
def closure5(g5):
    from megalie.exactalg import megaideal_closure

    return megaideal_closure(g5)


@pytest.fixture(scope="session")
def report0():
    from megalie.sbve.verify import verify

    return verify(0, 4, 42)


@pytest.fixture(scope="session")
def report1():
    from megalie.sbve.verify import verify

    return verify(1, 4, 42)


# one PASS/FAIL line per acceptance criterion --------------------------------

_criteria: dict[int, tuple[str, bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    failed = rep.failed or (rep.when == "call" and rep.skipped)
    if rep.when == "call" or failed:
        prev = _criteria.get(number, (title, True))[1]
        _criteria[number] = (title, prev and not failed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")
