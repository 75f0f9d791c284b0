"""Decay diagnostics: logarithmic derivative, half-life and its scaling with N."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from scipy.optimize import brentq

from .analytic import CurveFamily, branch_point, check_size, eg_derivative, eg_exact, pure_measure
from .errors import DomainError


class GammaKind(str, enum.Enum):
    CONSTANT = "constant"
    LINEAR_IN_N = "linear"


@dataclass(frozen=True)
class GammaModel:
    """Dephasing rate, either fixed or growing linearly with the qubit number."""

    kind: GammaKind = GammaKind.CONSTANT
    gamma0: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", GammaKind(self.kind))
        if not self.gamma0 > 0:
            raise DomainError("gamma0 must be positive")

    def rate(self, n_qubits):
        return self.gamma0 * (n_qubits if self.kind is GammaKind.LINEAR_IN_N else 1)


def decay_value(family, n_qubits, gamma, t):
    """``E_G`` at time ``t`` for dephasing rate ``gamma``."""
    if t < 0:
        raise DomainError("time must be nonnegative")
    return eg_exact(family, n_qubits, math.exp(-gamma * t))


def log_derivative(family, n_qubits, gamma, t):
    """``d/dt ln E_G(t)`` at ``x = exp(-gamma t)``.

    Uses the closed-form derivative, except exactly at a hull breakpoint where
    a forward difference in ``t`` (step ``1e-7 max(t, 1)``) gives the
    right-hand value.
    """
    family = check_size(family, n_qubits)
    if not gamma > 0 or not t > 0:
        raise DomainError("gamma and t must be positive")
    x = math.exp(-gamma * t)
    e = eg_exact(family, n_qubits, x)
    if e <= 0.0:
        raise DomainError(f"E_G vanishes at t={t}; logarithmic derivative undefined")
    bp = branch_point(family)
    if bp is not None and x == float(bp):
        h = 1e-7 * max(t, 1.0)
        e_next = decay_value(family, n_qubits, gamma, t + h)
        return (math.log(e_next) - math.log(e)) / h
    eta = -gamma * x * eg_derivative(family, n_qubits, x) / e
    return min(eta, 0.0)


def half_life_x(family, n_qubits):
    """Dephasing parameter at which ``E_G`` has dropped to half its pure-state value."""
    family = check_size(family, n_qubits)
    target = 0.5 * pure_measure(family, n_qubits)
    return brentq(lambda x: eg_exact(family, n_qubits, x) - target, 0.0, 1.0,
                  xtol=1e-15, rtol=1e-15, maxiter=500)


def half_life(family, n_qubits, model):
    """Time at which ``E_G`` reaches half its initial (pure-state) value."""
    x = half_life_x(family, n_qubits)
    return -math.log(x) / model.rate(n_qubits)


ASYMPTOTIC_RATIO = math.log(4.0) / math.log(4.0 / 3.0)


@dataclass(frozen=True)
class ScalingRow:
    n_qubits: int
    t_half_ghz: float
    t_half_cluster: float

    @property
    def ratio(self):
        return self.t_half_cluster / self.t_half_ghz


def scaling_table(model, n_list):
    """Half-lives of GHZ and linear cluster states for each ``N`` in ``n_list``."""
    rows = []
    for n in n_list:
        n = int(n)
        if n < 2 or n % 2:
            raise DomainError(f"cluster half-life needs an even N >= 2, got {n}")
        rows.append(ScalingRow(n, half_life(CurveFamily.GHZ_N, n, model),
                               half_life(CurveFamily.CL_N, n, model)))
    return rows
