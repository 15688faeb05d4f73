import mpmath
import pytest

mpmath.mp.dps = 50


def mp_q(x):
    x = mpmath.mpf(x)
    return mpmath.erfc(x / mpmath.sqrt(2)) / 2


def mp_psi(x):
    return mpmath.npdf(mpmath.mpf(x))


def mp_g(u):
    u = mpmath.mpf(u)
    return u * u * mp_q(u) - u * mp_psi(u)


@pytest.fixture
def mp():
    return mpmath


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
