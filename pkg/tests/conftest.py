import pytest

from conicbundles.divisor import Divisor
from conicbundles.field_curve import INFINITY, EllipticCurve, find_torsion

# lines recorded by the acceptance tests, echoed in the terminal summary
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


@pytest.fixture(scope="session")
def e5():
    """y^2 = x^3 - x over F_5: group Z/2 x Z/4."""
    return EllipticCurve(5, -1, 0)


@pytest.fixture(scope="session")
def e5b():
    """y^2 = x^3 + x over F_5: group (Z/2)^2."""
    return EllipticCurve(5, 1, 0)


@pytest.fixture(scope="session")
def e13():
    """y^2 = x^3 + x over F_13: 20 points, Z/2 x Z/10."""
    return EllipticCurve(13, 1, 0)


@pytest.fixture(scope="session")
def delta(e5):
    p1 = find_torsion(e5, 4)
    return [INFINITY, p1, e5.mul(2, p1), e5.mul(3, p1)]


@pytest.fixture(scope="session")
def example_D(e5, delta):
    return Divisor.of_points(e5, delta[:2])
