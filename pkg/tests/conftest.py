import random

import pytest
from hypothesis import strategies as st

from vknot.gauss import GaussDiagram, parse_gauss_code, random_diagram

VTREFOIL = "O1+ O2+ U1+ U2+"
TREFOIL = "O1+ U2+ O3+ U1+ O2+ U3+"


@pytest.fixture
def vtrefoil() -> GaussDiagram:
    return parse_gauss_code(VTREFOIL)


@pytest.fixture
def trefoil() -> GaussDiagram:
    return parse_gauss_code(TREFOIL)


@st.composite
def diagrams(draw, max_n=8, positive=False):
    n = draw(st.integers(0, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_diagram(n, random.Random(seed), positive=positive)


# one (number, passed, detail) entry per acceptance criterion, filled by test_acceptance
ACCEPTANCE: list = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")
