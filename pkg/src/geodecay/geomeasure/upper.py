"""Upper bounds from explicit pure-state decompositions of dephased states.

Each trial family keeps one distinguished support term of the target state
with amplitude ``c`` and spreads ``s`` evenly over the other ``m`` terms,
signs preserved; the ``m + 1`` cyclic placements of the distinguished term
are mixed with equal weight. Matching the dephased off-diagonal entries fixes
``x = 2 c s / sqrt(m) + (m - 1) s^2 / m``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..analytic import CurveFamily, check_size
from ..decoherence import dephase_global
from ..errors import DomainError
from ..states import DensityMatrix, PureState, StateFamily, make_state
from .hull import convex_hull_envelope
from .pure import DEFAULT_OPTIONS, geometric_measure_pure

CERTIFICATE_TOL = 1e-12
_CLOSED_FORM_TOL = 1e-8

_STATE_OF = {
    CurveFamily.GHZ_N: StateFamily.GHZ,
    CurveFamily.CL4: StateFamily.CLUSTER_LINEAR,
    CurveFamily.CL_N: StateFamily.CLUSTER_LINEAR,
    CurveFamily.W4: StateFamily.W4,
    CurveFamily.D4: StateFamily.DICKE4,
}


@dataclass(frozen=True, eq=False)
class Decomposition:
    weights: np.ndarray
    states: tuple

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        if w.ndim != 1 or w.shape[0] != len(self.states) or w.shape[0] == 0:
            raise DomainError("one weight per state required")
        if np.any(w < 0) or abs(w.sum() - 1.0) > 1e-12:
            raise DomainError("weights must form a probability vector")
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "states", tuple(self.states))

    def matrix(self):
        A = np.array([s.amplitudes for s in self.states])
        return (A.T * self.weights) @ A.conj()

    def reconstruction_error(self, rho):
        return float(np.max(np.abs(self.matrix() - rho.matrix)))

    def reconstructs(self, rho, atol=CERTIFICATE_TOL):
        return self.reconstruction_error(rho) <= atol

    def mix(self, other, p_other):
        """Convex combination ``(1 - p) self + p other``."""
        weights = np.concatenate([(1 - p_other) * self.weights, p_other * other.weights])
        keep = weights > 0
        states = [s for s, k in zip(self.states + other.states, keep) if k]
        weights = weights[keep]
        return Decomposition(weights / weights.sum(), tuple(states))


def target_state(family, n_qubits):
    family = check_size(family, n_qubits)
    return make_state(_STATE_OF[family], n_qubits)


def mixing_angle(x, m):
    """``(c, s)`` on the branch continuous with ``c = 1`` at ``x = 0``.

    Squaring the constraint gives a quadratic in ``s^2`` whose smaller root is
    ``m x^2 / ((m-1) x + 2 + 2 sqrt((1-x)(1+m x)))``; ``x = 1`` lands on the
    undephased state.
    """
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"dephasing parameter {x} outside [0, 1]")
    if m < 1:
        raise DomainError("trial family needs at least two support terms")
    x = float(x)
    s2 = m * x * x / ((m - 1) * x + 2.0 + 2.0 * math.sqrt((1.0 - x) * (1.0 + m * x)))
    return math.sqrt(1.0 - s2), math.sqrt(s2)


def _w_trial_measure(c):
    c2 = c * c
    if c2 >= 0.5:
        return 1.0 - c2
    return (5.0 + 4.0 * c2 * (c2 * c2 + c2 - 3.0)) / (3.0 - 4.0 * c2) ** 2


def _top_eig2(a, b, d):
    # largest eigenpair of [[a, b], [b, d]]
    half = 0.5 * (a - d)
    lam = 0.5 * (a + d) + math.hypot(half, b)
    if half >= 0:
        v0, v1 = lam - d, b
    else:
        v0, v1 = b, lam - a
    norm = math.hypot(v0, v1)
    if norm == 0.0:
        return lam, (1.0, 0.0)
    return lam, (v0 / norm, v1 / norm)


def _dicke_trial_overlap(c, s, starts=8, max_iter=10000, tol=1e-16):
    """Max overlap of ``c|0011> + s(rest)/sqrt(5)`` with ``|a>|a>|b>|b>``.

    The overlap is a quadratic form in ``a`` for fixed ``b`` and vice versa,
    so each half-step is a 2x2 top-eigenvector problem.
    """
    q = s / math.sqrt(5.0)
    best = 0.0
    for k in range(starts):
        th = (k + 0.5) * (math.pi / 2) / starts
        b0, b1 = math.cos(th), math.sin(th)
        prev = -1.0
        for _ in range(max_iter):
            _, (a0, a1) = _top_eig2(c * b1 * b1, 2 * q * b0 * b1, q * b0 * b0)
            lam, (b0, b1) = _top_eig2(q * a1 * a1, 2 * q * a0 * a1, c * a0 * a0)
            if abs(lam - prev) < tol:
                break
            prev = lam
        best = max(best, lam)
    return best


def trial_measure(family, c, s):
    """Geometric measure shared by every trial state at angle ``(c, s)``.

    Closed forms for GHZ-, cluster- and W-type trial states; a
    symmetry-reduced alternating maximization for Dicke-type ones.
    """
    family = CurveFamily.parse(family)
    if family is CurveFamily.GHZ_N:
        return min(c * c, s * s)
    if family in (CurveFamily.CL4, CurveFamily.CL_N):
        return s * s
    if family is CurveFamily.W4:
        return _w_trial_measure(c)
    h = _dicke_trial_overlap(c, s)
    return max(0.0, 1.0 - h * h)


def _support(psi):
    idx = np.flatnonzero(np.abs(psi.amplitudes) > 1e-14)
    signs = np.sign(np.real(psi.amplitudes[idx]))
    return idx, signs


def trial_states(family, n_qubits, c, s):
    psi = target_state(family, n_qubits)
    idx, signs = _support(psi)
    m = idx.shape[0] - 1
    out = []
    for k in range(m + 1):
        a = np.zeros(psi.dim)
        a[idx] = signs * s / math.sqrt(m)
        a[idx[k]] = signs[k] * c
        out.append(PureState(n_qubits, a))
    return out


def _support_size(family, n_qubits):
    family = CurveFamily.parse(family)
    return {CurveFamily.GHZ_N: 2, CurveFamily.CL4: 4, CurveFamily.W4: 4,
            CurveFamily.D4: 6}.get(family, 2 ** (n_qubits // 2))


def trial_upper_value(family, n_qubits, x):
    """Value of the trial decomposition bound before any hull step (closed forms only)."""
    family = check_size(family, n_qubits)
    c, s = mixing_angle(x, _support_size(family, n_qubits) - 1)
    return trial_measure(family, c, s)


def upper_bound_decomposition(family, n_qubits, x, opts=None, verify=True):
    """Trial-decomposition upper bound at ``x`` and its certificate.

    For cluster-type trial states with ``s > c`` the closed form ``s^2`` is
    checked against :func:`geometric_measure_pure`; any product state found
    with larger overlap lowers the reported value (both are valid bounds).
    """
    family = check_size(family, n_qubits)
    m = _support_size(family, n_qubits) - 1
    c, s = mixing_angle(x, m)
    states = trial_states(family, n_qubits, c, s)
    value = trial_measure(family, c, s)
    if verify and family in (CurveFamily.CL4, CurveFamily.CL_N) and s > c:
        opts = opts or DEFAULT_OPTIONS
        numeric = [geometric_measure_pure(phi, opts).value for phi in states]
        value = float(np.mean([min(value, e) for e in numeric]))
    weights = np.full(m + 1, 1.0 / (m + 1))
    return value, Decomposition(weights, tuple(states))


def dephased_target(family, n_qubits, x):
    return dephase_global(DensityMatrix.from_pure(target_state(family, n_qubits)), x)


@lru_cache(maxsize=32)
def upper_bound_envelope(family, n_qubits=4, grid=2001):
    """Convex hull in ``x`` of the trial bound on a uniform grid of ``[0, 1]``."""
    family = check_size(family, n_qubits)
    if grid < 3:
        raise DomainError("grid must have at least 3 points")
    xs = np.linspace(0.0, 1.0, grid)
    func = lambda x: trial_upper_value(family, n_qubits, x)  # noqa: E731
    ys = np.array([func(x) for x in xs])
    return convex_hull_envelope(xs, ys, func)


def upper_bound_hulled(family, n_qubits, x, grid=2001):
    """Hull-improved upper bound and a certificate realizing it.

    On a straight hull segment ``[l, r]`` the state is the mixture of the
    trial decompositions at ``l`` and ``r``, since the dephased state is
    affine in ``x``.
    """
    family = check_size(family, n_qubits)
    env = upper_bound_envelope(family, n_qubits, grid)
    seg = env.segment_at(x)
    if seg is None:
        return upper_bound_decomposition(family, n_qubits, x, verify=False)
    _, left = upper_bound_decomposition(family, n_qubits, seg.x_left, verify=False)
    _, right = upper_bound_decomposition(family, n_qubits, seg.x_right, verify=False)
    p = (x - seg.x_left) / (seg.x_right - seg.x_left)
    return seg(x), left.mix(right, p)
