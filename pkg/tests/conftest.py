import pytest

from mehler_heine.families import Charlier, Meixner

_acceptance = {}


@pytest.fixture(scope="session")
def charlier():
    return Charlier(1.23)


@pytest.fixture(scope="session")
def meixner():
    return Meixner(1.23, 0.36)


@pytest.fixture(scope="session", params=["charlier", "meixner"])
def family(request):
    return Charlier(1.23) if request.param == "charlier" else Meixner(1.23, 0.36)


def pytest_runtest_logreport(report):
    # acceptance tests record ("criterion", (number, title)) as a user property
    if report.when != "call":
        return
    for name, value in report.user_properties:
        if name == "criterion":
            number, title = value
            ok = _acceptance.get(number, (True, title))[0]
            _acceptance[number] = (ok and report.passed, title)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        ok, title = _acceptance[number]
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}: {title}")
