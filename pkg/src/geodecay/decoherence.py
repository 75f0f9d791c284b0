"""Phenomenological rate-equation noise and its global-dephasing special case."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .errors import DomainError, NumericalError
from .states import DensityMatrix

_POP_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class RateModel:
    """Relaxation rates ``W[i, k]`` and off-diagonal decay rates ``V[k, l]``.

    ``W[i, k]`` feeds population from level ``i`` into level ``k``; the
    diagonal of ``W`` is ignored. ``V`` must be symmetric.
    """

    W: np.ndarray
    V: np.ndarray

    def __post_init__(self):
        W = np.array(self.W, dtype=float)
        V = np.array(self.V, dtype=float)
        if W.ndim != 2 or W.shape[0] != W.shape[1] or V.shape != W.shape:
            raise DomainError("W and V must be square matrices of equal size")
        if np.any(W < 0) or np.any(V < 0):
            raise DomainError("rates must be nonnegative")
        if np.max(np.abs(V - V.T)) > 1e-12:
            raise DomainError("V must be symmetric")
        W.flags.writeable = False
        V.flags.writeable = False
        object.__setattr__(self, "W", W)
        object.__setattr__(self, "V", V)

    @property
    def dim(self):
        return self.W.shape[0]

    @classmethod
    def global_dephasing(cls, dim, gamma):
        V = np.full((dim, dim), float(gamma))
        np.fill_diagonal(V, 0.0)
        return cls(np.zeros((dim, dim)), V)

    def generator(self):
        """Population rate matrix ``G`` with ``d p / dt = G p``."""
        W = self.W.copy()
        np.fill_diagonal(W, 0.0)
        G = W.T.copy()
        G[np.diag_indices_from(G)] = -W.sum(axis=1)
        return G


@dataclass(frozen=True)
class DephasingTrajectory:
    gamma: float

    def __post_init__(self):
        if not self.gamma >= 0:
            raise DomainError("gamma must be nonnegative")

    def x(self, t):
        if np.any(np.asarray(t) < 0):
            raise DomainError("time must be nonnegative")
        return np.exp(-self.gamma * np.asarray(t, dtype=float))

    def t(self, x):
        x = np.asarray(x, dtype=float)
        if np.any((x <= 0) | (x > 1)):
            raise DomainError("x must lie in (0, 1]")
        return -np.log(x) / self.gamma


def dephase_global(rho0, x):
    """Multiply every off-diagonal entry by ``x``; populations unchanged."""
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"dephasing parameter {x} outside [0, 1]")
    m = rho0.matrix
    out = m * x
    np.fill_diagonal(out, np.diag(m))
    return DensityMatrix(rho0.n_qubits, out)


def evolve_master(rho0, rates, t):
    """Evolve ``rho0`` for time ``t`` under the rate model.

    Populations follow the Pauli rate equation (solved by a matrix
    exponential); coherences decay as ``exp(-V[k, l] t)``.
    """
    if t < 0:
        raise DomainError("time must be nonnegative")
    if rates.dim != rho0.dim:
        raise DomainError(f"rate model of size {rates.dim} vs state of size {rho0.dim}")
    if t == 0:
        return rho0
    m = rho0.matrix
    out = m * np.exp(-rates.V * t)
    pops = np.real(np.diag(m))
    if np.any(rates.W):
        pops = expm(rates.generator() * t) @ pops
        if np.any(pops < -_POP_TOL) or np.any(pops > 1 + _POP_TOL):
            raise NumericalError("populations left [0, 1] during rate-equation evolution")
        if abs(pops.sum() - 1.0) > _POP_TOL:
            raise NumericalError(f"trace drifted to {pops.sum()!r}")
        pops = np.clip(pops, 0.0, 1.0)
    np.fill_diagonal(out, pops)
    return DensityMatrix(rho0.n_qubits, out)


def parse_rate_model(text):
    """Read a rate model from text.

    The first non-comment line holds the dimension ``d``; it is followed by
    ``d`` whitespace-separated rows of ``W`` and then ``d`` rows of ``V``.
    Blank lines and ``#`` comments are ignored.
    """
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows:
        raise DomainError("empty rate-model file")
    try:
        dim = int(rows[0][0])
        if len(rows[0]) != 1 or dim < 1:
            raise ValueError
    except ValueError:
        raise DomainError(f"bad header line {' '.join(rows[0])!r}") from None
    body = rows[1:]
    if len(body) != 2 * dim or any(len(r) != dim for r in body):
        raise DomainError(f"expected {2 * dim} rows of {dim} numbers after the header")
    try:
        data = np.array(body, dtype=float)
    except ValueError as exc:
        raise DomainError(f"non-numeric entry in rate model: {exc}") from None
    return RateModel(data[:dim], data[dim:])


def load_rate_model(path):
    with open(path) as fh:
        return parse_rate_model(fh.read())


def format_rate_model(rates):
    lines = [str(rates.dim), "# W"]
    lines += [" ".join(repr(float(v)) for v in row) for row in rates.W]
    lines.append("# V")
    lines += [" ".join(repr(float(v)) for v in row) for row in rates.V]
    return "\n".join(lines) + "\n"
