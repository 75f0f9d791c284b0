import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from geodecay.analysis import (
    ASYMPTOTIC_RATIO,
    GammaKind,
    GammaModel,
    decay_value,
    half_life,
    log_derivative,
    scaling_table,
)
from geodecay.analytic import branch_point, eg_exact, pure_measure
from geodecay.errors import DomainError

FOUR = [("GHZ_N", 4), ("CL4", 4), ("W4", 4), ("D4", 4)]
CONST = GammaModel(GammaKind.CONSTANT, 1.0)
LINEAR = GammaModel(GammaKind.LINEAR_IN_N, 1.0)


@pytest.mark.parametrize("family,n", FOUR + [("CL_N", 8)])
@given(t=st.floats(1e-4, 30), gamma=st.floats(0.1, 5))
def test_eta_nonpositive(family, n, t, gamma):
    if decay_value(family, n, gamma, t) > 0:
        assert log_derivative(family, n, gamma, t) <= 0


@pytest.mark.parametrize("t", [0.5, 1.0, 1.5])
def test_eta_ordering(t):
    eta = [abs(log_derivative(f, n, 1.0, t)) for f, n in FOUR]
    assert eta[0] >= eta[1] >= eta[2] >= eta[3]


def test_w4_and_cl4_coincide_past_branch():
    t0 = math.log(2667 / 2183)
    for t in np.linspace(t0 + 1e-6, 8, 200):
        assert log_derivative("W4", 4, 1.0, t) == pytest.approx(log_derivative("CL4", 4, 1.0, t), rel=1e-12)
    assert log_derivative("W4", 4, 1.0, 0.1) != pytest.approx(log_derivative("CL4", 4, 1.0, 0.1), rel=1e-3)


@pytest.mark.parametrize("family,n", FOUR + [("CL_N", 6)])
@pytest.mark.parametrize("t", [1e-3, 0.05, 0.7, 3.0])
def test_eta_matches_finite_difference(family, n, t):
    h = 1e-7 * t
    fd = (math.log(decay_value(family, n, 1.0, t + h)) - math.log(decay_value(family, n, 1.0, t - h))) / (2 * h)
    assert log_derivative(family, n, 1.0, t) == pytest.approx(fd, rel=1e-5)


def test_ghz_eta_small_t_behaviour():
    # E ~ (1 - sqrt(2 t)) / 2 near t = 0, so eta grows like -1/sqrt(2 t)
    for t in (1e-6, 1e-8, 1e-10):
        assert log_derivative("GHZ_N", 4, 1.0, t) * math.sqrt(2 * t) == pytest.approx(-1.0, rel=2e-3)


@pytest.mark.parametrize("family", ["W4", "D4"])
def test_eta_kinks_at_branch(family):
    # tangent hull: eta itself is continuous, its slope in t jumps
    tb = -math.log(float(branch_point(family)))
    h = 1e-4
    eta = [log_derivative(family, 4, 1.0, tb + k * h) for k in (-2, -1, 1, 2)]
    assert abs(eta[1] - eta[2]) < 1e-2
    left, right = (eta[1] - eta[0]) / h, (eta[3] - eta[2]) / h
    assert abs(right - left) > 0.5
    assert log_derivative(family, 4, 1.0, tb) == pytest.approx(eta[2], abs=1e-2)


def test_log_derivative_domain():
    with pytest.raises(DomainError):
        log_derivative("GHZ_N", 4, 1.0, 0.0)
    with pytest.raises(DomainError):
        log_derivative("GHZ_N", 4, -1.0, 1.0)
    with pytest.raises(DomainError):
        log_derivative("GHZ_N", 4, 1.0, 1e4)


def test_ghz_half_life_closed_form():
    for N in (2, 4, 9, 30):
        assert half_life("GHZ_N", N, CONST) == pytest.approx(math.log(2 / math.sqrt(3)), abs=1e-12)
    vals = [half_life("GHZ_N", N, GammaModel("linear", 0.5)) for N in range(2, 20)]
    assert vals[0] == pytest.approx(math.log(2 / math.sqrt(3)) / 1.0, abs=1e-12)
    assert all(b < a for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("family,n", FOUR + [("CL_N", 2), ("CL_N", 20), ("CL_N", 60)])
@pytest.mark.parametrize("model", [CONST, GammaModel("linear", 0.3)])
def test_half_life_resubstitution(family, n, model):
    t = half_life(family, n, model)
    assert t > 0
    assert abs(decay_value(family, n, model.rate(n), t) - pure_measure(family, n) / 2) < 1e-10


def test_scaling_examples():
    rows = scaling_table(GammaModel("constant", 4.0), [4, 40])
    assert rows[0].t_half_ghz == pytest.approx(0.035960, abs=1e-6)
    assert rows[1].ratio == pytest.approx(4.82, rel=0.05)
    assert scaling_table(CONST, []) == []
    with pytest.raises(DomainError):
        scaling_table(CONST, [5])


@pytest.mark.parametrize("model", [CONST, LINEAR])
def test_ratio_monotone_and_converges(model):
    rows = scaling_table(model, range(4, 61, 2))
    ratios = [r.ratio for r in rows]
    assert all(b > a for a, b in zip(ratios, ratios[1:]))
    assert ratios[-1] == pytest.approx(ASYMPTOTIC_RATIO, rel=0.01)
    assert ratios[-1] < ASYMPTOTIC_RATIO


def test_ratio_identical_across_models():
    a = scaling_table(GammaModel("constant", 4.0), range(2, 61, 2))
    b = scaling_table(GammaModel("linear", 1.0), range(2, 61, 2))
    for ra, rb in zip(a, b):
        assert ra.ratio == pytest.approx(rb.ratio, rel=1e-12)


@pytest.mark.parametrize("family,n", FOUR)
def test_decay_convex_in_time(family, n):
    ts = np.linspace(0, 6, 1201)
    y = np.array([decay_value(family, n, 1.0, t) for t in ts])
    assert np.all(np.diff(y) <= 1e-15)
    assert np.all(y[1:-1] <= (y[:-2] + y[2:]) / 2 + 1e-15)


def test_gamma_model_validation():
    with pytest.raises(DomainError):
        GammaModel("constant", 0.0)
    with pytest.raises(ValueError):
        GammaModel("quadratic", 1.0)
    assert eg_exact("GHZ_N", 4, 1.0) == 0.5
