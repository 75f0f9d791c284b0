import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from geodecay.analytic import (
    CurveFamily,
    branch_point,
    decay_curve,
    eg_derivative,
    eg_exact,
    pure_measure,
)
from geodecay.errors import DomainError

FAMILIES = [("GHZ_N", 4), ("CL4", 4), ("W4", 4), ("D4", 4), ("CL_N", 8)]
GRID = np.linspace(0, 1, 2001)


def _cl_n_big(x, N):
    """Displayed N-qubit expression evaluated with 60 significant digits."""
    with mpmath.workdps(60):
        x = mpmath.mpf(x)
        n = N // 2
        k = mpmath.mpf(2) ** n
        big = mpmath.mpf(2) ** N
        return ((2 - 3 * k + big) * x + 2 * (k - 1) * (1 - mpmath.sqrt((1 - x) * (1 + (k - 1) * x)))) / big


def test_examples():
    assert eg_exact("W4", 4, 1.0) == pytest.approx(37 / 64, abs=1e-15)
    assert 37 * 44 / 2816 == 37 / 64
    x = float(Fraction(5, 7))
    assert eg_exact("D4", 4, x) == pytest.approx(5 / 14, abs=1e-12)
    low = 2.5 * x * x / (1 + 2 * x + math.sqrt((1 - x) * (1 + 5 * x)))
    assert low == pytest.approx(5 / 14, abs=1e-12)
    assert eg_exact("CL_N", 4, 1.0) == pytest.approx(0.75, abs=1e-15)
    for N in (2, 3, 10, 100):
        assert eg_exact("GHZ_N", N, 0.0) == 0.0
    assert eg_exact("GHZ_N", 4, 0.6) == pytest.approx(0.1, abs=1e-15)


@pytest.mark.parametrize("x", GRID[::50])
def test_cl_n_two_qubits_is_bell_curve(x):
    assert eg_exact("CL_N", 2, x) == eg_exact("GHZ_N", 2, x)


def test_cl_n_four_qubits_is_cl4():
    for x in GRID:
        assert eg_exact("CL_N", 4, x) == pytest.approx(eg_exact("CL4", 4, x), abs=1e-15)


def test_branch_points():
    assert branch_point("W4") == Fraction(2183, 2667)
    assert float(branch_point("W4")) == pytest.approx(0.818523, abs=1e-6)
    assert branch_point("D4") == Fraction(5, 7)
    assert branch_point("GHZ_N") is None
    assert branch_point("CL_N") is None


@pytest.mark.parametrize("family,n", FAMILIES)
def test_endpoints(family, n):
    assert eg_exact(family, n, 0.0) == pytest.approx(0.0, abs=1e-15)
    assert eg_exact(family, n, 1.0) == pytest.approx(pure_measure(family, n), abs=1e-12)
    assert decay_curve(family, n).pure_value == pure_measure(family, n)


@pytest.mark.parametrize("family,n", FAMILIES)
def test_monotone_and_midpoint_convex(family, n):
    y = np.array([eg_exact(family, n, x) for x in GRID])
    assert np.all(np.diff(y) >= -1e-15)
    assert np.all(y[1:-1] <= (y[:-2] + y[2:]) / 2 + 1e-15)


def test_w4_equals_cl4_below_branch():
    x0 = float(branch_point("W4"))
    for x in GRID[GRID <= x0]:
        assert abs(eg_exact("W4", 4, x) - eg_exact("CL4", 4, x)) <= 1e-12


@pytest.mark.parametrize("family", ["W4", "D4"])
def test_branches_continuous(family):
    x0 = float(branch_point(family))
    below = eg_exact(family, 4, math.nextafter(x0, 0))
    assert abs(eg_exact(family, 4, x0) - below) <= 1e-12


@pytest.mark.parametrize("N", [2, 4, 6, 8, 10, 20, 30, 40])
def test_cl_n_matches_big_number_evaluation(N):
    for x in np.linspace(0.001, 1, 97):
        ref = _cl_n_big(x, N)
        assert abs(eg_exact("CL_N", N, x) - float(ref)) <= 1e-12 * float(ref)


def test_cl_n_large_n_stays_finite():
    for N in (100, 200, 2000, 4000, 10**5):
        v = eg_exact("CL_N", N, 0.5)
        assert math.isfinite(v) and 0 < v < 1
    assert eg_exact("CL_N", 4000, 1.0) == pytest.approx(1.0, abs=1e-15)
    assert eg_exact("CL_N", 10**5, 0.25) == 0.25
    assert eg_derivative("CL_N", 10**5, 0.0) == 1.0


@pytest.mark.parametrize("family,n", FAMILIES)
@given(x=st.floats(0.01, 0.99))
def test_derivative_matches_difference_quotient(family, n, x):
    bp = branch_point(family)
    if bp is not None and abs(x - float(bp)) < 1e-5:
        return
    h = 1e-6
    fd = (eg_exact(family, n, x + h) - eg_exact(family, n, x - h)) / (2 * h)
    assert eg_derivative(family, n, x) == pytest.approx(fd, rel=1e-6, abs=1e-8)


def test_derivative_sides_at_branch():
    x0 = float(branch_point("D4"))
    assert eg_derivative("D4", 4, x0, side="right") == 15 / 16
    # the hull segment is tangent, so both one-sided slopes agree
    assert eg_derivative("D4", 4, x0, side="left") == pytest.approx(15 / 16, abs=1e-12)
    x0 = float(branch_point("W4"))
    assert eg_derivative("W4", 4, x0, side="left") == pytest.approx(2997 / 2816, abs=1e-12)
    assert eg_derivative("GHZ_N", 4, 1.0) == math.inf


@pytest.mark.parametrize("family,n", [("W4", 3), ("D4", 6), ("CL_N", 5), ("CL_N", 0),
                                      ("GHZ_N", 1), ("CL4", 6)])
def test_invalid_sizes(family, n):
    with pytest.raises(DomainError):
        eg_exact(family, n, 0.5)


def test_invalid_x_and_family():
    with pytest.raises(DomainError):
        eg_exact("GHZ_N", 4, 1.5)
    with pytest.raises(DomainError):
        CurveFamily.parse("bogus")
    assert CurveFamily.parse("ghz") is CurveFamily.GHZ_N
    assert CurveFamily.parse("dicke") is CurveFamily.D4
