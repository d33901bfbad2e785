from fractions import Fraction
from pathlib import Path

import mpmath as mp
import pytest

from stateint.arith import make_modular_pair
from stateint.expr import parse_complex
from stateint.ring.polynomial import OperatorPolynomial as P

PRECISION = 40
GOLDEN = Path(__file__).parent / "golden"

B_POINTS = ("exp(i*pi/4)", "exp(i*pi/3)", "1.1*exp(i*pi/5)")
AB_GRID = ((1, 2), (2, 3), (1, 3), (3, 4))


def pair_for(expr: str, precision: int = PRECISION):
    # b must be parsed at the working precision, not at mpmath's default 15 digits
    return make_modular_pair(parse_complex(expr, precision), precision)


@pytest.fixture(autouse=True)
def _working_dps():
    # test-side comparisons run at the working precision too
    with mp.workdps(PRECISION):
        yield


@pytest.fixture(scope="session")
def pairs():
    return {expr: pair_for(expr) for expr in B_POINTS}


def _displayed_p23(corrected: bool) -> P:
    """The three-bracket display of P_{2,3}; i/pi is written as -2*pihat.

    ``corrected`` moves -3 dt2 -> -3 d2 in the b^2 bracket and -6 e2 from the
    b^0 bracket into the b^-2 bracket.
    """
    g = P.parse
    d, d1, d2 = g("d"), g("d1"), g("d2")
    dt, dt1, dt2, e2 = g("dt"), g("dt1"), g("dt2"), g("e2")
    b2, bm2, pihat = g("b^2"), g("b^-2"), g("pihat")
    half = P.constant(Fraction(1, 2))

    first = 1 + 4 * d + 4 * d**2 - 6 * d1 - 12 * d * d1 + 9 * d1**2 - 3 * (d2 if corrected else dt2)
    middle = (
        1 + 2 * d - 2 * pihat + 2 * dt + 4 * d * dt - 3 * d1 - 6 * dt * d1
        - 6 * dt1 - 12 * d * dt1 + 18 * d1 * dt1
    )
    last = -dt - dt**2 + 3 * dt1 + 6 * dt * dt1 - 9 * dt1**2 + 3 * dt2
    if corrected:
        last = last - 6 * e2
    else:
        middle = middle - 6 * e2
    return -half * b2 * first + half * middle + half * bm2 * last


@pytest.fixture(scope="session")
def displayed_p23():
    return {"verbatim": _displayed_p23(False), "corrected": _displayed_p23(True)}


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
