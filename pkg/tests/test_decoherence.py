import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import solve_ivp

from geodecay.decoherence import (
    DephasingTrajectory,
    RateModel,
    dephase_global,
    evolve_master,
    format_rate_model,
    load_rate_model,
    parse_rate_model,
)
from geodecay.errors import DomainError
from geodecay.states import DensityMatrix, fidelity, make_state


def _random_rho(rng, n):
    d = 1 << n
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    m = a @ a.conj().T
    return DensityMatrix(n, m / np.trace(m))


def test_dephase_identity_and_full(rng):
    rho = _random_rho(rng, 3)
    assert np.array_equal(dephase_global(rho, 1.0).matrix, rho.matrix)
    full = dephase_global(rho, 0.0).matrix
    assert np.array_equal(full, np.diag(np.diag(rho.matrix)))


def test_dephase_ghz_entries():
    rho = dephase_global(make_state("GHZ", 4).density(), 0.5).matrix
    assert rho[0, 15] == pytest.approx(0.25, abs=1e-15)
    assert rho[15, 0] == pytest.approx(0.25, abs=1e-15)
    assert rho[0, 0] == pytest.approx(0.5, abs=1e-15)
    assert rho[15, 15] == pytest.approx(0.5, abs=1e-15)


@pytest.mark.parametrize("x", [-0.1, 1.5])
def test_dephase_domain(x):
    with pytest.raises(DomainError):
        dephase_global(make_state("GHZ", 2).density(), x)


@settings(max_examples=40, deadline=None)
@given(st.floats(0, 1), st.floats(0, 1), st.integers(0, 2**31))
def test_dephasing_semigroup(x1, x2, seed):
    rho = _random_rho(np.random.default_rng(seed), 2)
    a = dephase_global(dephase_global(rho, x1), x2).matrix
    b = dephase_global(rho, x1 * x2).matrix
    assert np.max(np.abs(a - b)) <= 1e-12
    assert np.array_equal(np.diag(a), np.diag(rho.matrix))


@pytest.mark.parametrize("x", np.linspace(0, 1, 11))
def test_dephased_fidelities(x):
    w = make_state("W4", 4)
    assert fidelity(dephase_global(w.density(), x), w) == pytest.approx((1 + 3 * x) / 4, abs=1e-12)
    for n_qubits in (2, 4, 6, 8):
        cl = make_state("ClusterLinear", n_qubits)
        k = 2 ** (n_qubits // 2)
        assert fidelity(dephase_global(cl.density(), x), cl) == pytest.approx(
            (1 + (k - 1) * x) / k, abs=1e-12)


@pytest.mark.parametrize("gamma,t", [(1.0, 0.3), (0.2, 5.0), (3.0, 0.01)])
def test_master_equation_reduces_to_global_dephasing(gamma, t, rng):
    rho = _random_rho(rng, 3)
    rates = RateModel.global_dephasing(8, gamma)
    a = evolve_master(rho, rates, t).matrix
    b = dephase_global(rho, np.exp(-gamma * t)).matrix
    assert np.max(np.abs(a - b)) <= 1e-10


def test_master_equation_trivial_cases(rng):
    rho = _random_rho(rng, 2)
    rates = RateModel(rng.uniform(0, 1, (4, 4)), np.full((4, 4), 0.7))
    assert evolve_master(rho, rates, 0.0) is rho
    still = evolve_master(rho, RateModel(np.zeros((4, 4)), np.zeros((4, 4))), 3.0)
    assert np.array_equal(still.matrix, rho.matrix)
    with pytest.raises(DomainError):
        evolve_master(rho, rates, -1.0)


def test_populations_match_ode_oracle(rng):
    rho = _random_rho(rng, 2)
    W = rng.uniform(0, 2, (4, 4))
    V = rng.uniform(0, 1, (4, 4))
    V = V + V.T
    rates = RateModel(W, V)
    t = 0.8

    def rhs(_, p):
        # d p_k/dt = sum_{i != k} W[i, k] p_i - W[k, i] p_k
        out = np.zeros(4)
        for k in range(4):
            for i in range(4):
                if i != k:
                    out[k] += W[i, k] * p[i] - W[k, i] * p[k]
        return out

    p0 = np.real(np.diag(rho.matrix))
    sol = solve_ivp(rhs, (0, t), p0, rtol=1e-12, atol=1e-14)
    out = evolve_master(rho, rates, t).matrix
    assert np.allclose(np.real(np.diag(out)), sol.y[:, -1], atol=1e-9)
    assert abs(np.trace(out) - 1) < 1e-10
    k, l = 0, 3
    assert out[k, l] == pytest.approx(rho.matrix[k, l] * np.exp(-V[k, l] * t), abs=1e-14)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**31), st.floats(0, 10))
def test_master_equation_preserves_trace(seed, t):
    rng = np.random.default_rng(seed)
    rho = _random_rho(rng, 2)
    V = rng.uniform(0, 1, (4, 4))
    rates = RateModel(rng.uniform(0, 3, (4, 4)), V + V.T)
    out = evolve_master(rho, rates, t)
    assert abs(np.trace(out.matrix).real - 1) <= 1e-10


def test_rate_model_validation():
    with pytest.raises(DomainError):
        RateModel(-np.ones((2, 2)), np.zeros((2, 2)))
    with pytest.raises(DomainError):
        RateModel(np.zeros((2, 2)), np.array([[0, 1], [2, 0]]))
    with pytest.raises(DomainError):
        RateModel(np.zeros((2, 2)), np.zeros((3, 3)))


def test_rate_model_file_round_trip(tmp_path, rng):
    V = rng.uniform(0, 1, (4, 4))
    rates = RateModel(rng.uniform(0, 1, (4, 4)), V + V.T)
    path = tmp_path / "rates.txt"
    path.write_text(format_rate_model(rates))
    back = load_rate_model(path)
    assert np.array_equal(back.W, rates.W)
    assert np.array_equal(back.V, rates.V)


def test_rate_model_file_format():
    text = """# two-level system
    2
    0 0.5
    0.1 0
    0 2.0   # dephasing
    2.0 0
    """
    rates = parse_rate_model(text)
    assert rates.W[0, 1] == 0.5 and rates.V[1, 0] == 2.0
    for bad in ["", "x\n", "2\n0 0\n0 0\n0 0\n", "2\n0 0\n0 0\n0 0\n0 a\n"]:
        with pytest.raises(DomainError):
            parse_rate_model(bad)


def test_trajectory():
    traj = DephasingTrajectory(2.0)
    assert traj.x(0.0) == 1.0
    assert traj.t(traj.x(0.7)) == pytest.approx(0.7)
    with pytest.raises(DomainError):
        DephasingTrajectory(-1.0)
    with pytest.raises(DomainError):
        traj.x(-1.0)
