from fractions import Fraction as F

import pytest

from formalpi import ActionJet, MapJet, Polynomial


def variables(dim):
    return [Polynomial.variable(dim, i) for i in range(dim)]


def action(poly, order=8):
    return ActionJet.from_polynomial(poly, order)


def map_jet(polys, order=6):
    return MapJet.from_polynomials(polys, order)


def _corpus():
    (x,) = variables(1)
    X, Y = variables(2)
    return {
        "quartic": x * x * F(1, 2) + x**4 * F(1, 24),
        "cubic": x * x * F(1, 2) + x**3 * F(1, 6),
        "mixed1d": x * x * F(1, 2) + x**3 * F(1, 3) - x**4 * F(1, 8) + x**5 * F(1, 30),
        "stiff1d": 2 * x * x + x**3 - x**5 * F(1, 7),
        "negative1d": -x * x * F(3, 2) + x**4 * F(1, 5),
        "quintic1d": x * x * F(1, 2) + x**5 * F(1, 120),
        "quartic2d": (X * X + Y * Y) * F(1, 2) + X**4 * F(1, 24),
        "generic2d": X * X * F(1, 2) + Y * Y + X * Y * F(1, 3) + X**3 * F(1, 5)
        + X * Y * Y * F(2, 7) + Y**4 * F(1, 24) + X * X * Y**3 * F(1, 11),
        "indefinite2d": (X * X - Y * Y) * F(1, 2) + X * X * Y * F(1, 2) + Y**4 * F(1, 12),
        "coupled2d": X * X + X * Y + Y * Y + X**3 * F(1, 6) - Y**3 * F(1, 4)
        + X * X * Y * Y * F(1, 8) + X**5 * F(1, 20),
        "cubic2d": X * X * F(1, 2) + Y * Y * F(3, 2) + X * Y * Y + X**3 * Y * F(1, 6) + Y**5 * F(1, 10),
    }


CORPUS = _corpus()


@pytest.fixture(scope="session")
def corpus():
    return {name: action(p, 8) for name, p in CORPUS.items()}


# acceptance reporting: tests marked ``criterion`` get one summary line each

_ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE.append((marker.args[0], marker.args[1], report.outcome.upper(), item.name))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    merged = {}
    for number, text, outcome, name in _ACCEPTANCE:
        entry = merged.setdefault(number, {"texts": [], "names": [], "ok": True})
        entry["texts"].append(text)
        entry["names"].append(name)
        entry["ok"] &= outcome == "PASSED"
    terminalreporter.section("acceptance criteria")
    for number in sorted(merged):
        entry = merged[number]
        status = "PASS" if entry["ok"] else "FAIL"
        terminalreporter.write_line(
            f"criterion {number}: {status}  {'; '.join(entry['texts'])}  [{', '.join(entry['names'])}]"
        )
