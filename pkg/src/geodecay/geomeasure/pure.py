"""Geometric measure of pure states by alternating single-site maximization."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .. import _kernels
from ..errors import DomainError
from ..states import PureState, ProductState

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class OptimizerOptions:
    restarts: int = 16
    max_sweeps: int = 2000
    tol: float = 1e-15
    seed: int = 0

    def __post_init__(self):
        if self.restarts < 1:
            raise DomainError("restarts must be >= 1")
        if self.max_sweeps < 1:
            raise DomainError("max_sweeps must be >= 1")
        if not self.tol > 0:
            raise DomainError("tol must be > 0")

    def start_rngs(self, count=None):
        """Independent generators, one per start, split from ``seed``."""
        count = self.restarts if count is None else count
        children = np.random.SeedSequence(self.seed).spawn(count)
        return [np.random.default_rng(c) for c in children]


DEFAULT_OPTIONS = OptimizerOptions()


class PureMeasure(NamedTuple):
    value: float
    product: ProductState
    converged: bool


def random_factors(rng, n_qubits):
    z = rng.normal(size=(n_qubits, 2)) + 1j * rng.normal(size=(n_qubits, 2))
    return np.ascontiguousarray(z / np.linalg.norm(z, axis=1, keepdims=True))


def basis_factors(index, n_qubits, tilt=0.0):
    """Product state close to the basis state ``index``, tilted by ``tilt`` radians."""
    f = np.empty((n_qubits, 2), dtype=complex)
    c, s = np.cos(tilt), np.sin(tilt)
    for q in range(n_qubits):
        bit = (index >> (n_qubits - 1 - q)) & 1
        f[q] = (s, c) if bit else (c, s)
    return f


def maximize_overlap(psi, factors, max_sweeps, tol):
    """Alternating ascent from ``factors`` (modified in place).

    Returns ``(squared overlap, converged)``.
    """
    prev = -1.0
    for _ in range(max_sweeps):
        ov = _kernels.sweep(psi, factors)
        if abs(ov - prev) < tol:
            return ov, True
        prev = ov
    return prev, False


def geometric_measure_pure(psi, opts=None):
    """``1 - max |<phi|psi>|^2`` over fully separable ``phi``.

    Runs the alternating ascent from the basis state carrying the largest
    amplitude and from ``opts.restarts`` random product states; the best run
    wins. ``converged`` is False if that run hit ``max_sweeps``.
    """
    opts = opts or DEFAULT_OPTIONS
    if not isinstance(psi, PureState):
        raise DomainError("geometric_measure_pure expects a PureState")
    amps = np.ascontiguousarray(psi.amplitudes, dtype=complex)
    n = psi.n_qubits
    if n == 1:
        f = amps / np.linalg.norm(amps)
        return PureMeasure(0.0, ProductState((f,)), True)

    starts = [basis_factors(int(np.argmax(np.abs(amps))), n)]
    starts += [random_factors(rng, n) for rng in opts.start_rngs()]
    best = (-1.0, None, False)
    for factors in starts:
        ov, ok = maximize_overlap(amps, factors, opts.max_sweeps, opts.tol)
        if ov > best[0]:
            best = (ov, factors.copy(), ok)
    ov, factors, ok = best
    if not ok:
        log.warning("alternating ascent stopped at max_sweeps=%d", opts.max_sweeps)
    value = min(1.0, max(0.0, 1.0 - ov))
    return PureMeasure(value, ProductState(tuple(factors)), ok)
