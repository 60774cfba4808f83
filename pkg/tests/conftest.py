import pytest
from hypothesis import HealthCheck, settings

from hyperdense import Poly, cyclotomic, make_field, rational_field

# derandomized so that repeated runs see identical examples
settings.register_profile(
    "repro",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repro")

x = Poly.x()


@pytest.fixture(scope="session")
def Q():
    return rational_field()


@pytest.fixture(scope="session")
def Qi():
    return make_field(x**2 + 1)


@pytest.fixture(scope="session")
def R2():
    return make_field(x**2 - 2)


@pytest.fixture(scope="session")
def Cube():
    return make_field(x**3 - 2)


@pytest.fixture(scope="session")
def Z5():
    return make_field(cyclotomic(5))


@pytest.fixture(scope="session")
def Z8():
    return make_field(cyclotomic(8))


def pytest_terminal_summary(terminalreporter):
    from helpers import ACCEPTANCE

    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
