from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from weylexp.polyalg import Poly, VectorField

settings.register_profile("default", deadline=None)
settings.load_profile("default")

small_fracs = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4))
pos_fracs = st.builds(Fraction, st.integers(1, 9), st.integers(1, 5))


def polys(nvars, max_terms=3, max_deg=2):
    exps = st.tuples(*[st.integers(0, max_deg)] * nvars)
    return st.dictionaries(exps, small_fracs, max_size=max_terms).map(lambda d: Poly(nvars, d))


def fields(nvars, **kw):
    return st.lists(polys(nvars, **kw), min_size=nvars, max_size=nvars).map(VectorField)


def rational_points(n, lo=-4, hi=4):
    return st.lists(st.builds(Fraction, st.integers(lo, hi), st.integers(1, 3)),
                    min_size=n, max_size=n)


_acceptance = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))
    elif "test_acceptance.py" in report.nodeid and report.when == "setup" and report.outcome != "passed":
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        tag = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{tag}  {name}")


@pytest.fixture
def frac():
    return Fraction
