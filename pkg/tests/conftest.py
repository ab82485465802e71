import mpmath
import pytest
from hypothesis import HealthCheck, settings

from mwlat.numfield import tower_build
from mwlat.specfile import load_example

settings.register_profile(
    "default", max_examples=200, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")


def pin(expr, digits=40):
    """Pin record for an mpmath expression such as "sqrt(sqrt(2) - 1)"."""
    with mpmath.workdps(digits + 10):
        z = mpmath.mpc(eval(expr, {"__builtins__": {}}, vars(mpmath)))
        return {"re": mpmath.nstr(z.real, digits), "im": mpmath.nstr(z.imag, digits)}


@pytest.fixture(scope="session")
def gauss():
    return tower_build([("i", -1, {"re": "0", "im": "1"})])


@pytest.fixture(scope="session")
def tower3():
    """Q(i, sqrt2, sqrt3): hosts every 1-(b) constant."""
    return tower_build([
        ("i", -1, {"re": "0", "im": "1"}),
        ("r2", 2, pin("sqrt(2)")),
        ("r3", 3, pin("sqrt(3)")),
    ])


@pytest.fixture(scope="session")
def ex1a():
    return load_example("5.1a")


@pytest.fixture(scope="session")
def ex1b():
    return load_example("5.1b")


@pytest.fixture(scope="session")
def ex2():
    return load_example("5.2")


@pytest.fixture(scope="session")
def ex3():
    return load_example("5.3")


@pytest.fixture(scope="session")
def ctx1a(ex1a):
    from mwlat.mwlattice import HeightContext
    return HeightContext.build(ex1a.curve, ex1a.hints)


@pytest.fixture(scope="session")
def ctx1b(ex1b):
    from mwlat.mwlattice import HeightContext
    return HeightContext.build(ex1b.curve, ex1b.hints)


# acceptance summary: one line per criterion -----------------------------

_CRITERIA = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call" and item.module.__name__.endswith("test_acceptance"):
        num = getattr(item.function, "criterion", None)
        if num is not None:
            title = (item.function.__doc__ or item.name).strip().splitlines()[0]
            _CRITERIA[num] = (title, rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for num in sorted(_CRITERIA):
        title, ok = _CRITERIA[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {title}")
