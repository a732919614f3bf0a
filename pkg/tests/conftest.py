import cmath

import numpy as np
import pytest
from hypothesis import strategies as st

from pbent.ff import point_space
from pbent.pfunc import PAryFunction


@st.composite
def functions(draw, p, n):
    vals = draw(st.lists(st.integers(0, p - 1), min_size=p**n, max_size=p**n))
    return PAryFunction(p, n, vals)


@st.composite
def even_functions(draw, p, n):
    """Even with f(0) = 0: one value per {x, -x} orbit."""
    space = point_space(p, n)
    vals = np.zeros(space.size, dtype=np.int64)
    for x in range(1, space.size):
        y = int(space.neg[x])
        if y > x:
            v = draw(st.integers(0, p - 1))
            vals[x] = vals[y] = v
    return PAryFunction(p, n, vals)


def numeric(c) -> complex:
    """Evaluate a cyclotomic integer at zeta = exp(2 pi i / p)."""
    z = cmath.exp(2j * cmath.pi / c.p)
    return sum(a * z**k for k, a in enumerate(c.coeffs))


def complex_walsh(f: PAryFunction) -> np.ndarray:
    """Floating-point oracle: sum_y exp(2 pi i (f(y) - <x,y>) / p)."""
    pts = f.space.points
    ip = pts @ pts.T
    return np.exp(2j * np.pi * ((f.values[None, :] - ip) % f.p) / f.p).sum(axis=1)


def poly(src, p, n):
    return PAryFunction.from_poly(src, p, n)


@pytest.fixture
def gf32a():
    return poly("-x0^2+x1^2", 3, 2)


@pytest.fixture
def gf32b():
    return poly("x0^2+x1^2", 3, 2)


# amorphic bent functions on GF(p)^4 built from orthogonal arrays, with their duals
OA3LST = ("2x0x3+x1x2+x0^2x1x2+2x0x1^2x3", "x0x3+2x1x2+x0x2^2x3+2x1x2x3^2")
OA5LST = (
    "4x0^3x3+3x0^2x1x2+x0x1^2x3+3x1^3x2+x0^4x1^3x2+3x0^3x1^4x3",
    "2x1x2^3+4x0x2^2x3+2x1x2x3^2+x0x3^3+2x0x2^4x3^3+4x1x2^3x3^4",
)
OA7LST = (
    "6x0^5x3+4x0^4x1x2+x0^3x1^2x3+6x0^2x1^3x2+5x0x1^4x3+4x1^5x2+5x0^6x1^5x2+4x0^5x1^6x3",
    "2x0x2^4x3+6x0x2^2x3^3+x0x3^5+3x1x2^5+x1x2^3x3^2+3x1x2x3^4+3x0x2^6x3^5+2x1x2^5x3^6",
)


# "PASS/FAIL criterion N: ..." lines, echoed in the terminal summary
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
